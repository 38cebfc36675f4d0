#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bladeseg/nn_ops.hpp"
#include "bladeseg/rng.hpp"
#include "bladeseg/tensor.hpp"

namespace bladeseg {

// Classic U-Net: per level two 3x3 same-padded convs with ReLU, channel
// width doubling per pooling stage, 2x2 upconv + skip concatenation on the
// way back up, 1x1 conv + sigmoid head.
struct UNetConfig {
  int depth = 3;          // number of pooling stages
  int base_channels = 8;  // width of level 0
  int in_channels = 3;
  int out_channels = 1;

  void validate() const {
    if (depth < 1) throw InvalidConfig("UNetConfig: depth must be >= 1, got " + std::to_string(depth));
    if (base_channels < 1)
      throw InvalidConfig("UNetConfig: base_channels must be >= 1, got " + std::to_string(base_channels));
    if (in_channels < 1 || out_channels < 1) throw InvalidConfig("UNetConfig: channel counts must be >= 1");
  }
};

enum class LayerKind : uint8_t { Conv3x3 = 0, UpConv2x2 = 1, Conv1x1 = 2 };

struct LayerPlanEntry {
  LayerKind kind;
  int in_ch;
  int out_ch;
};

// The fixed layer order: encoder levels 0..depth-1 (two 3x3 convs each),
// bottleneck (two 3x3 convs), decoder levels depth-1..0 (one 2x2 upconv +
// two 3x3 convs each), head (1x1 conv). Serialization, init, forward and
// backward all walk this plan.
std::vector<LayerPlanEntry> unet_layer_plan(const UNetConfig& config);

int64_t param_count(const UNetConfig& config);

template <typename T>
struct UNetLayer {
  LayerKind kind;
  Tensor<T> weight;
  Tensor<T> bias;
};

template <typename T>
struct UNetParamsT {
  UNetConfig config;
  std::vector<UNetLayer<T>> layers;
};

using UNetParams = UNetParamsT<float>;

// Gradients mirror the parameter layout.
template <typename T>
using UNetGradsT = UNetParamsT<T>;

namespace detail {
inline std::vector<int> layer_weight_shape(const LayerPlanEntry& e) {
  switch (e.kind) {
    case LayerKind::Conv3x3:
      return {e.out_ch, e.in_ch, 3, 3};
    case LayerKind::UpConv2x2:
      return {e.in_ch, e.out_ch, 2, 2};  // transposed-conv layout
    case LayerKind::Conv1x1:
      return {e.out_ch, e.in_ch, 1, 1};
  }
  return {};
}

inline int layer_fan_in(const LayerPlanEntry& e) {
  switch (e.kind) {
    case LayerKind::Conv3x3:
      return e.in_ch * 9;
    case LayerKind::UpConv2x2:
      return e.in_ch * 4;
    case LayerKind::Conv1x1:
      return e.in_ch;
  }
  return 1;
}
}  // namespace detail

// He initialization: weights ~ N(0, sqrt(2/fan_in)), biases zero,
// fan_in = in_channels * k * k. Deterministic in seed.
template <typename T>
UNetParamsT<T> unet_init(const UNetConfig& config, uint64_t seed) {
  config.validate();
  UNetParamsT<T> p;
  p.config = config;
  Rng rng(hash_combine(seed, 0x756e6574ULL));  // "unet"
  for (const auto& e : unet_layer_plan(config)) {
    UNetLayer<T> layer;
    layer.kind = e.kind;
    layer.weight = Tensor<T>(detail::layer_weight_shape(e));
    layer.bias = Tensor<T>({e.out_ch});
    const double std_dev = std::sqrt(2.0 / detail::layer_fan_in(e));
    for (int64_t i = 0; i < layer.weight.size(); ++i)
      layer.weight[i] = static_cast<T>(rng.normal() * std_dev);
    p.layers.push_back(std::move(layer));
  }
  return p;
}

template <typename T>
struct UNetCache {
  // Input to every layer, indexed like the layer plan (needed for dWeight).
  std::vector<Tensor<T>> layer_in;
  // Pre-ReLU output of every Conv3x3 layer (empty tensor otherwise).
  std::vector<Tensor<T>> preact;
  // Pooling argmaxes + pre-pool spatial dims, per encoder level.
  std::vector<Tensor<int32_t>> pool_argmax;
  std::vector<std::pair<int, int>> pool_in_dims;
  // Post-ReLU encoder outputs feeding the skips, per level.
  std::vector<Tensor<T>> skip;
  // Sigmoid output.
  Tensor<T> prob;
};

struct ForwardOptions {
  // Test hook: zero the encoder half of every concat to prove the skips
  // carry signal.
  bool zero_skips = false;
};

template <typename T>
Tensor<T> unet_forward(const UNetParamsT<T>& params, const Tensor<T>& image, UNetCache<T>* cache = nullptr,
                       ForwardOptions opts = {}) {
  const UNetConfig& cfg = params.config;
  cfg.validate();
  if (image.rank() != 3 || image.dim(0) != cfg.in_channels)
    throw ShapeMismatch("unet_forward: image " + image.shape_str() + ", want [" +
                        std::to_string(cfg.in_channels) + "xHxW]");
  const int div = 1 << cfg.depth;
  if (image.dim(1) % div != 0 || image.dim(2) % div != 0)
    throw ShapeMismatch("unet_forward: spatial dims " + std::to_string(image.dim(1)) + "x" +
                        std::to_string(image.dim(2)) + " not divisible by 2^depth = " + std::to_string(div));

  UNetCache<T> local;
  UNetCache<T>& cc = cache ? *cache : local;
  cc.layer_in.clear();
  cc.preact.clear();
  cc.pool_argmax.clear();
  cc.pool_in_dims.clear();
  cc.skip.clear();

  auto conv_relu = [&](const Tensor<T>& x, const UNetLayer<T>& l) {
    cc.layer_in.push_back(x);
    Tensor<T> pre = conv2d_fwd(x, l.weight, l.bias, 1, 1);
    cc.preact.push_back(pre);
    return relu_fwd(pre);
  };

  Tensor<T> x = image;
  size_t li = 0;

  // Contracting path.
  for (int lvl = 0; lvl < cfg.depth; ++lvl) {
    x = conv_relu(x, params.layers[li++]);
    x = conv_relu(x, params.layers[li++]);
    cc.skip.push_back(x);
    cc.pool_in_dims.emplace_back(x.dim(1), x.dim(2));
    auto pooled = maxpool2x2_fwd(x);
    cc.pool_argmax.push_back(std::move(pooled.argmax));
    x = std::move(pooled.output);
  }

  // Bottleneck.
  x = conv_relu(x, params.layers[li++]);
  x = conv_relu(x, params.layers[li++]);

  // Expanding path. Concat order: upsampled features first, then the skip.
  for (int lvl = cfg.depth - 1; lvl >= 0; --lvl) {
    const UNetLayer<T>& up = params.layers[li++];
    cc.layer_in.push_back(x);
    cc.preact.emplace_back();  // placeholder; upconv has no ReLU
    x = upconv2x2_fwd(x, up.weight, up.bias);
    Tensor<T> sk = cc.skip[static_cast<size_t>(lvl)];
    if (opts.zero_skips) sk = Tensor<T>(sk.shape());
    x = concat_channels(x, sk);
    x = conv_relu(x, params.layers[li++]);
    x = conv_relu(x, params.layers[li++]);
  }

  // Head.
  const UNetLayer<T>& head = params.layers[li++];
  cc.layer_in.push_back(x);
  Tensor<T> logits = conv2d_fwd(x, head.weight, head.bias, 1, 0);
  cc.preact.push_back(logits);
  cc.prob = sigmoid_fwd(logits);
  return cc.prob;
}

// Gradient of every parameter given dL/dProb. Needs the cache produced by
// unet_forward on the same input.
template <typename T>
UNetGradsT<T> unet_backward(const UNetParamsT<T>& params, const UNetCache<T>& cache, const Tensor<T>& dprob) {
  const UNetConfig& cfg = params.config;
  UNetGradsT<T> grads;
  grads.config = cfg;
  grads.layers.resize(params.layers.size());

  const size_t n_layers = params.layers.size();
  // Backward through one Conv3x3+ReLU layer; returns dL/d(layer input).
  auto conv_relu_bwd_at = [&](size_t li, const Tensor<T>& dpost) {
    Tensor<T> dpre = relu_bwd(cache.preact[li], dpost);
    auto g = conv2d_bwd(cache.layer_in[li], params.layers[li].weight, dpre, 1, 1);
    grads.layers[li] = {params.layers[li].kind, std::move(g.weight), std::move(g.bias)};
    return std::move(g.input);
  };

  // Head: sigmoid then 1x1 conv.
  size_t li = n_layers - 1;
  Tensor<T> dlogits = sigmoid_bwd(cache.prob, dprob);
  auto ghead = conv2d_bwd(cache.layer_in[li], params.layers[li].weight, dlogits, 1, 0);
  grads.layers[li] = {params.layers[li].kind, std::move(ghead.weight), std::move(ghead.bias)};
  Tensor<T> dx = std::move(ghead.input);

  // Decoder levels were executed lvl = depth-1 .. 0; walk them back 0 .. depth-1.
  std::vector<Tensor<T>> dskip(static_cast<size_t>(cfg.depth));
  size_t dec_base = 2 * static_cast<size_t>(cfg.depth) + 2;  // first decoder layer index
  for (int lvl = 0; lvl < cfg.depth; ++lvl) {
    size_t up_idx = dec_base + 3 * static_cast<size_t>(cfg.depth - 1 - lvl);
    dx = conv_relu_bwd_at(up_idx + 2, dx);
    dx = conv_relu_bwd_at(up_idx + 1, dx);
    auto [dup, dsk] = split_channels(dx, dx.dim(0) / 2);
    dskip[static_cast<size_t>(lvl)] = std::move(dsk);
    auto gup = upconv2x2_bwd(cache.layer_in[up_idx], params.layers[up_idx].weight, dup);
    grads.layers[up_idx] = {params.layers[up_idx].kind, std::move(gup.weight), std::move(gup.bias)};
    dx = std::move(gup.input);
  }

  // Bottleneck.
  dx = conv_relu_bwd_at(2 * static_cast<size_t>(cfg.depth) + 1, dx);
  dx = conv_relu_bwd_at(2 * static_cast<size_t>(cfg.depth), dx);

  // Encoder levels depth-1 .. 0. Gradient at each level's output is the
  // unpooled gradient plus the skip gradient collected by the decoder.
  for (int lvl = cfg.depth - 1; lvl >= 0; --lvl) {
    auto [h, w] = cache.pool_in_dims[static_cast<size_t>(lvl)];
    Tensor<T> dlevel = maxpool2x2_bwd(dx, cache.pool_argmax[static_cast<size_t>(lvl)], h, w);
    const Tensor<T>& ds = dskip[static_cast<size_t>(lvl)];
    for (int64_t i = 0; i < dlevel.size(); ++i) dlevel[i] += ds[i];
    size_t c1 = 2 * static_cast<size_t>(lvl);
    dx = conv_relu_bwd_at(c1 + 1, dlevel);
    dx = conv_relu_bwd_at(c1, dx);
  }

  return grads;
}

template <typename T>
UNetParamsT<double> params_to_double(const UNetParamsT<T>& p) {
  UNetParamsT<double> out;
  out.config = p.config;
  for (const auto& l : p.layers) out.layers.push_back({l.kind, to_double(l.weight), to_double(l.bias)});
  return out;
}

// Model file: "UNET" magic, u32 format version, u32 config fields
// (depth, base_channels, in_channels, out_channels), then every layer's
// weight and bias tensors as little-endian float32 in plan order.
inline constexpr uint32_t kModelFormatVersion = 1;

void save_model(const UNetParams& params, const std::string& path);
UNetParams load_model(const std::string& path);

}  // namespace bladeseg
