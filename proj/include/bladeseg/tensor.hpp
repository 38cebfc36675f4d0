#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bladeseg/errors.hpp"

namespace bladeseg {

// Dense row-major N-d array. float for training, double for gradient checks.
template <typename T>
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
    int64_t n = 1;
    for (int d : shape_) {
      if (d <= 0) throw ShapeMismatch("Tensor: non-positive dimension " + std::to_string(d));
      n *= d;
    }
    data_.assign(static_cast<size_t>(n), T(0));
  }

  Tensor(std::vector<int> shape, std::vector<T> data) : shape_(std::move(shape)), data_(std::move(data)) {
    int64_t n = 1;
    for (int d : shape_) n *= d;
    if (n != static_cast<int64_t>(data_.size()))
      throw ShapeMismatch("Tensor: data length " + std::to_string(data_.size()) +
                          " does not match shape product " + std::to_string(n));
  }

  static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_[static_cast<size_t>(i)]; }
  int64_t size() const { return static_cast<int64_t>(data_.size()); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  T& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }
  const T& operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }

  // C,H,W accessor for the common 3-d case.
  T& at(int c, int y, int x) {
    return data_[(static_cast<size_t>(c) * shape_[1] + y) * shape_[2] + x];
  }
  const T& at(int c, int y, int x) const {
    return data_[(static_cast<size_t>(c) * shape_[1] + y) * shape_[2] + x];
  }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

  std::string shape_str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < shape_.size(); ++i) os << (i ? "x" : "") << shape_[i];
    os << "]";
    return os.str();
  }

  bool all_finite() const {
    for (const T& v : data_)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }

 private:
  std::vector<int> shape_;
  std::vector<T> data_;
};

template <typename T>
Tensor<double> to_double(const Tensor<T>& t) {
  Tensor<double> out(t.shape());
  for (int64_t i = 0; i < t.size(); ++i) out[i] = static_cast<double>(t[i]);
  return out;
}

template <typename T>
Tensor<float> to_float(const Tensor<T>& t) {
  Tensor<float> out(t.shape());
  for (int64_t i = 0; i < t.size(); ++i) out[i] = static_cast<float>(t[i]);
  return out;
}

}  // namespace bladeseg
