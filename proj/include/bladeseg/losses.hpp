#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bladeseg/tensor.hpp"

namespace bladeseg {

// Hard set-overlap metrics on binary masks. Any nonzero byte counts as
// positive (disk masks use 255). Both-empty pairs score 1.0: perfect
// agreement on absence.

inline double jaccard_index(const std::vector<uint8_t>& w1, const std::vector<uint8_t>& w2) {
  if (w1.size() != w2.size())
    throw ShapeMismatch("jaccard_index: mask sizes " + std::to_string(w1.size()) + " vs " +
                        std::to_string(w2.size()));
  int64_t inter = 0, uni = 0;
  for (size_t i = 0; i < w1.size(); ++i) {
    bool a = w1[i] != 0, b = w2[i] != 0;
    inter += (a && b);
    uni += (a || b);
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline double dice_coeff(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
  if (a.size() != b.size())
    throw ShapeMismatch("dice_coeff: mask sizes " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  int64_t inter = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    bool x = a[i] != 0, y = b[i] != 0;
    inter += (x && y);
    na += x;
    nb += y;
  }
  if (na + nb == 0) return 1.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(na + nb);
}

enum class LossKind : uint8_t { SoftJaccard = 0, SoftDice = 1 };

template <typename T>
struct SoftLossResult {
  T loss;
  Tensor<T> dpred;
};

// Differentiable relaxations over probabilities:
//   SoftDice    = 1 - (2*sum(p*t) + s) / (sum(p) + sum(t) + s)
//   SoftJaccard = 1 - (sum(p*t) + s) / (sum(p) + sum(t) - sum(p*t) + s)
// The smooth constant s keeps empty-mask pairs away from 0/0.
template <typename T>
SoftLossResult<T> soft_loss(const Tensor<T>& pred, const Tensor<T>& truth, LossKind kind, T smooth = T(1)) {
  if (!pred.same_shape(truth))
    throw ShapeMismatch("soft_loss: pred " + pred.shape_str() + " vs truth " + truth.shape_str());
  T sum_pt = T(0), sum_p = T(0), sum_t = T(0);
  for (int64_t i = 0; i < pred.size(); ++i) {
    sum_pt += pred[i] * truth[i];
    sum_p += pred[i];
    sum_t += truth[i];
  }
  SoftLossResult<T> r{T(0), Tensor<T>(pred.shape())};
  if (kind == LossKind::SoftDice) {
    T num = T(2) * sum_pt + smooth;
    T den = sum_p + sum_t + smooth;
    r.loss = T(1) - num / den;
    // dL/dp_i = -(2*t_i*den - num) / den^2
    T inv_den2 = T(1) / (den * den);
    for (int64_t i = 0; i < pred.size(); ++i) r.dpred[i] = -(T(2) * truth[i] * den - num) * inv_den2;
  } else {
    T num = sum_pt + smooth;
    T den = sum_p + sum_t - sum_pt + smooth;
    r.loss = T(1) - num / den;
    // dL/dp_i = -(t_i*den - num*(1 - t_i)) / den^2
    T inv_den2 = T(1) / (den * den);
    for (int64_t i = 0; i < pred.size(); ++i)
      r.dpred[i] = -(truth[i] * den - num * (T(1) - truth[i])) * inv_den2;
  }
  return r;
}

}  // namespace bladeseg
