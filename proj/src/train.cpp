#include <charconv>
#include <numeric>

#include "bladeseg/optim.hpp"

namespace bladeseg {

Tensor<float> flip_horizontal(const Tensor<float>& t) {
  Tensor<float> out(t.shape());
  const int C = t.dim(0), H = t.dim(1), W = t.dim(2);
  for (int c = 0; c < C; ++c)
    for (int y = 0; y < H; ++y)
      for (int x = 0; x < W; ++x) out.at(c, y, x) = t.at(c, y, W - 1 - x);
  return out;
}

namespace {

// Fisher-Yates over a SplitMix64 stream; std::shuffle is not pinned across
// standard libraries.
void shuffle_indices(std::vector<size_t>& idx, uint64_t seed) {
  Rng rng(seed);
  for (size_t i = idx.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.next_u64() % i);
    std::swap(idx[i - 1], idx[j]);
  }
}

std::vector<uint8_t> threshold_mask(const Tensor<float>& prob, float thr) {
  std::vector<uint8_t> out(static_cast<size_t>(prob.size()));
  for (int64_t i = 0; i < prob.size(); ++i) out[static_cast<size_t>(i)] = prob[i] > thr ? 255 : 0;
  return out;
}

}  // namespace

TrainResult train(const std::vector<TrainSample>& train_set, const std::vector<TrainSample>& val_set,
                  const UNetConfig& net_cfg, const TrainConfig& train_cfg, uint64_t init_seed) {
  train_cfg.validate();
  if (train_set.empty()) throw EmptyDataset("train: empty training set");

  TrainResult result;
  result.params = unet_init<float>(net_cfg, init_seed);
  AdamState state = AdamState::zeros_like(result.params);

  std::vector<size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), size_t{0});

  UNetCache<float> cache;
  double best_dice = -1.0;

  for (int epoch = 0; epoch < train_cfg.epochs; ++epoch) {
    shuffle_indices(order, hash_combine(train_cfg.shuffle_seed, static_cast<uint64_t>(epoch)));

    double loss_sum = 0.0;
    for (size_t pos = 0; pos < order.size(); ++pos) {
      const TrainSample& s = train_set[order[pos]];
      Rng coin(hash_combine(hash_combine(train_cfg.shuffle_seed, static_cast<uint64_t>(epoch)),
                            0x1000 + static_cast<uint64_t>(pos)));
      bool flip = train_cfg.flip_prob > 0.0 && coin.bernoulli(train_cfg.flip_prob);
      const Tensor<float> img = flip ? flip_horizontal(s.image) : s.image;
      const Tensor<float> tru = flip ? flip_horizontal(s.truth) : s.truth;

      Tensor<float> prob = unet_forward(result.params, img, &cache);
      auto l = soft_loss(prob, tru, train_cfg.loss_kind, static_cast<float>(train_cfg.smooth));
      loss_sum += static_cast<double>(l.loss);
      UNetGradsT<float> grads = unet_backward(result.params, cache, l.dpred);
      adam_step(result.params, grads, state, train_cfg);
    }

    EpochStats es;
    es.train_loss = loss_sum / static_cast<double>(order.size());
    if (!val_set.empty()) {
      double dice_sum = 0.0, jac_sum = 0.0;
      for (const TrainSample& s : val_set) {
        Tensor<float> prob = unet_forward(result.params, s.image);
        std::vector<uint8_t> pred = threshold_mask(prob, 0.5f);
        dice_sum += dice_coeff(pred, s.mask_bytes);
        jac_sum += jaccard_index(pred, s.mask_bytes);
      }
      es.val_dice = dice_sum / static_cast<double>(val_set.size());
      es.val_jaccard = jac_sum / static_cast<double>(val_set.size());
    }
    result.history.push_back(es);
    if (es.val_dice > best_dice) {
      best_dice = es.val_dice;
      result.best_epoch = epoch;
    }
  }
  return result;
}

std::string history_to_csv(const std::vector<EpochStats>& history) {
  auto fmt = [](double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip form
    return std::string(buf, r.ptr);
  };
  std::string out = "epoch,train_loss,val_dice,val_jaccard\n";
  for (size_t i = 0; i < history.size(); ++i) {
    out += std::to_string(i) + "," + fmt(history[i].train_loss) + "," + fmt(history[i].val_dice) + "," +
           fmt(history[i].val_jaccard) + "\n";
  }
  return out;
}

}  // namespace bladeseg
