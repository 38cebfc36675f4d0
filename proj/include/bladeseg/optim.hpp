#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bladeseg/losses.hpp"
#include "bladeseg/unet.hpp"

namespace bladeseg {

struct TrainConfig {
  int epochs = 100;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  LossKind loss_kind = LossKind::SoftJaccard;
  double smooth = 1.0;
  uint64_t shuffle_seed = 0;
  double flip_prob = 0.5;  // horizontal flip, image and mask together

  void validate() const {
    if (epochs < 1) throw InvalidConfig("TrainConfig: epochs must be >= 1");
    if (!(learning_rate >= 0.0)) throw InvalidConfig("TrainConfig: learning_rate must be >= 0");
    if (beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0)
      throw InvalidConfig("TrainConfig: betas must be in [0,1)");
    if (flip_prob < 0.0 || flip_prob > 1.0) throw InvalidConfig("TrainConfig: flip_prob must be in [0,1]");
  }
};

// Per-parameter Adam moments, laid out like the model parameters.
template <typename T>
struct AdamStateT {
  std::vector<Tensor<T>> m_weight, v_weight, m_bias, v_bias;
  int64_t t = 0;

  static AdamStateT zeros_like(const UNetParamsT<T>& p) {
    AdamStateT s;
    for (const auto& l : p.layers) {
      s.m_weight.emplace_back(l.weight.shape());
      s.v_weight.emplace_back(l.weight.shape());
      s.m_bias.emplace_back(l.bias.shape());
      s.v_bias.emplace_back(l.bias.shape());
    }
    return s;
  }
};

using AdamState = AdamStateT<float>;

namespace detail {
template <typename T>
void adam_update(Tensor<T>& theta, const Tensor<T>& g, Tensor<T>& m, Tensor<T>& v, double alpha, double beta1,
                 double beta2, double eps, double bc1, double bc2) {
  if (!theta.same_shape(g))
    throw ShapeMismatch("adam_step: param " + theta.shape_str() + " vs grad " + g.shape_str());
  for (int64_t i = 0; i < theta.size(); ++i) {
    double gi = static_cast<double>(g[i]);
    double mi = beta1 * static_cast<double>(m[i]) + (1.0 - beta1) * gi;
    double vi = beta2 * static_cast<double>(v[i]) + (1.0 - beta2) * gi * gi;
    m[i] = static_cast<T>(mi);
    v[i] = static_cast<T>(vi);
    double mhat = mi / bc1;
    double vhat = vi / bc2;
    theta[i] = static_cast<T>(static_cast<double>(theta[i]) - alpha * mhat / (std::sqrt(vhat) + eps));
  }
}
}  // namespace detail

// One Adam step over all model parameters:
//   m <- b1*m + (1-b1)*g;  v <- b2*v + (1-b2)*g^2
//   mhat = m/(1-b1^t);     vhat = v/(1-b2^t)
//   theta <- theta - alpha * mhat / (sqrt(vhat) + eps)
// Moment math runs in double regardless of T so float training keeps the
// textbook recurrence.
template <typename T>
void adam_step(UNetParamsT<T>& params, const UNetGradsT<T>& grads, AdamStateT<T>& state, const TrainConfig& cfg) {
  if (grads.layers.size() != params.layers.size())
    throw ShapeMismatch("adam_step: grad layer count " + std::to_string(grads.layers.size()) + " vs " +
                        std::to_string(params.layers.size()));
  state.t += 1;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  for (size_t i = 0; i < params.layers.size(); ++i) {
    detail::adam_update(params.layers[i].weight, grads.layers[i].weight, state.m_weight[i], state.v_weight[i],
                        cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon, bc1, bc2);
    detail::adam_update(params.layers[i].bias, grads.layers[i].bias, state.m_bias[i], state.v_bias[i],
                        cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon, bc1, bc2);
  }
}

// An in-memory training sample: image scaled to [0,1], mask as {0,1} floats.
struct TrainSample {
  std::string id;
  Tensor<float> image;  // 3xHxW
  Tensor<float> truth;  // 1xHxW
  std::vector<uint8_t> mask_bytes;  // raw {0,255} mask, for metrics
  int defect_kind = 0;
};

struct EpochStats {
  double train_loss = 0.0;
  double val_dice = 0.0;
  double val_jaccard = 0.0;
};

struct TrainResult {
  UNetParams params;
  std::vector<EpochStats> history;  // exactly `epochs` entries
  int best_epoch = 0;               // epoch index with highest val dice
};

// Sequential batch-size-1 training loop. Deterministic given seeds: per-epoch
// shuffle is seeded with (shuffle_seed, epoch) and the flip coin with
// (shuffle_seed, epoch, position). Validation Dice/Jaccard use threshold 0.5.
TrainResult train(const std::vector<TrainSample>& train_set, const std::vector<TrainSample>& val_set,
                  const UNetConfig& net_cfg, const TrainConfig& train_cfg, uint64_t init_seed);

std::string history_to_csv(const std::vector<EpochStats>& history);

Tensor<float> flip_horizontal(const Tensor<float>& t);

}  // namespace bladeseg
