#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>

#include "bladeseg/tensor.hpp"

// Layer kernels used by the U-Net. Every differentiable op comes in two
// flavors: a `_ref` serial reference (textbook element-wise loops) and the
// production version whose outer loop is OpenMP-parallel. Both accumulate
// each output element over the same index sequence, so they agree
// bit-for-bit; tests assert that.
//
// Conventions, fixed for the life of the model file format:
//   - conv2d is cross-correlation: no kernel flip.
//   - weight layouts: conv2d O x C x k x k, upconv2x2 C x O x 2 x 2.
//   - stride is 1 for conv2d, 2 for upconv2x2; pad is 0 or (k-1)/2.
//   - inputs are never mutated.

namespace bladeseg {

namespace detail {

template <typename T>
inline void check_finite(const Tensor<T>& t, const char* op) {
#ifndef NDEBUG
  assert(t.all_finite() && op);
#else
  (void)t;
  (void)op;
#endif
}

inline void conv2d_check(const std::vector<int>& in, const std::vector<int>& w,
                         const std::vector<int>& b, int stride, int pad) {
  if (in.size() != 3) throw ShapeMismatch("conv2d: input rank " + std::to_string(in.size()) + ", want 3 (CxHxW)");
  if (w.size() != 4) throw ShapeMismatch("conv2d: weight rank " + std::to_string(w.size()) + ", want 4 (OxCxkxk)");
  if (b.size() != 1) throw ShapeMismatch("conv2d: bias rank " + std::to_string(b.size()) + ", want 1");
  int k = w[2];
  if (w[3] != k) throw ShapeMismatch("conv2d: non-square kernel " + std::to_string(w[2]) + "x" + std::to_string(w[3]));
  if (k != 1 && k != 3) throw InvalidConfig("conv2d: kernel size " + std::to_string(k) + " not in {1,3}");
  if (stride != 1) throw InvalidConfig("conv2d: stride " + std::to_string(stride) + " not supported (must be 1)");
  if (pad != 0 && pad != (k - 1) / 2)
    throw InvalidConfig("conv2d: pad " + std::to_string(pad) + " not in {0," + std::to_string((k - 1) / 2) + "}");
  if (w[1] != in[0])
    throw ShapeMismatch("conv2d: weight expects " + std::to_string(w[1]) + " input channels, input has " +
                        std::to_string(in[0]));
  if (b[0] != w[0])
    throw ShapeMismatch("conv2d: bias has " + std::to_string(b[0]) + " channels, weight outputs " +
                        std::to_string(w[0]));
  if (in[1] + 2 * pad < k || in[2] + 2 * pad < k)
    throw ShapeMismatch("conv2d: input " + std::to_string(in[1]) + "x" + std::to_string(in[2]) +
                        " smaller than kernel " + std::to_string(k));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// conv2d

template <typename T>
Tensor<T> conv2d_fwd_ref(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& bias,
                         int stride = 1, int pad = 0) {
  detail::conv2d_check(input.shape(), weight.shape(), bias.shape(), stride, pad);
  const int C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const int O = weight.dim(0), K = weight.dim(2);
  const int Ho = H + 2 * pad - K + 1, Wo = W + 2 * pad - K + 1;
  Tensor<T> out({O, Ho, Wo});
  for (int o = 0; o < O; ++o)
    for (int y = 0; y < Ho; ++y)
      for (int x = 0; x < Wo; ++x) {
        T acc = bias[o];
        for (int c = 0; c < C; ++c)
          for (int ky = 0; ky < K; ++ky)
            for (int kx = 0; kx < K; ++kx) {
              int iy = y + ky - pad, ix = x + kx - pad;
              if (iy < 0 || iy >= H || ix < 0 || ix >= W) continue;
              acc += weight[((static_cast<int64_t>(o) * C + c) * K + ky) * K + kx] * input.at(c, iy, ix);
            }
        out.at(o, y, x) = acc;
      }
  detail::check_finite(out, "conv2d_fwd_ref");
  return out;
}

template <typename T>
Tensor<T> conv2d_fwd(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& bias,
                     int stride = 1, int pad = 0) {
  detail::conv2d_check(input.shape(), weight.shape(), bias.shape(), stride, pad);
  const int C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const int O = weight.dim(0), K = weight.dim(2);
  const int Ho = H + 2 * pad - K + 1, Wo = W + 2 * pad - K + 1;
  Tensor<T> out({O, Ho, Wo});
  const T* in = input.data();
  const T* wts = weight.data();
  T* op = out.data();

#pragma omp parallel for schedule(static)
  for (int o = 0; o < O; ++o) {
    T* plane = op + static_cast<int64_t>(o) * Ho * Wo;
    const T bo = bias[o];
    for (int64_t i = 0; i < static_cast<int64_t>(Ho) * Wo; ++i) plane[i] = bo;
    for (int c = 0; c < C; ++c) {
      const T* cin = in + static_cast<int64_t>(c) * H * W;
      for (int ky = 0; ky < K; ++ky) {
        const int y_lo = std::max(0, pad - ky);
        const int y_hi = std::min(Ho, H + pad - ky);
        for (int kx = 0; kx < K; ++kx) {
          const T w = wts[((static_cast<int64_t>(o) * C + c) * K + ky) * K + kx];
          const int x_lo = std::max(0, pad - kx);
          const int x_hi = std::min(Wo, W + pad - kx);
          for (int y = y_lo; y < y_hi; ++y) {
            T* orow = plane + static_cast<int64_t>(y) * Wo;
            const T* irow = cin + static_cast<int64_t>(y + ky - pad) * W + (kx - pad);
            for (int x = x_lo; x < x_hi; ++x) orow[x] += w * irow[x];
          }
        }
      }
    }
  }
  detail::check_finite(out, "conv2d_fwd");
  return out;
}

template <typename T>
struct Conv2dGrads {
  Tensor<T> input;   // dL/dInput
  Tensor<T> weight;  // dL/dWeight
  Tensor<T> bias;    // dL/dBias
};

template <typename T>
Conv2dGrads<T> conv2d_bwd_ref(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& dout,
                              int stride = 1, int pad = 0) {
  detail::conv2d_check(input.shape(), weight.shape(), std::vector<int>{weight.dim(0)}, stride, pad);
  const int C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const int O = weight.dim(0), K = weight.dim(2);
  const int Ho = H + 2 * pad - K + 1, Wo = W + 2 * pad - K + 1;
  if (dout.shape() != std::vector<int>{O, Ho, Wo})
    throw ShapeMismatch("conv2d_bwd: dout " + dout.shape_str() + ", want [" + std::to_string(O) + "x" +
                        std::to_string(Ho) + "x" + std::to_string(Wo) + "]");

  Conv2dGrads<T> g{Tensor<T>({C, H, W}), Tensor<T>({O, C, K, K}), Tensor<T>({O})};
  for (int o = 0; o < O; ++o) {
    T acc = T(0);
    for (int y = 0; y < Ho; ++y)
      for (int x = 0; x < Wo; ++x) acc += dout.at(o, y, x);
    g.bias[o] = acc;
  }
  for (int o = 0; o < O; ++o)
    for (int c = 0; c < C; ++c)
      for (int ky = 0; ky < K; ++ky)
        for (int kx = 0; kx < K; ++kx) {
          T acc = T(0);
          for (int y = 0; y < Ho; ++y)
            for (int x = 0; x < Wo; ++x) {
              int iy = y + ky - pad, ix = x + kx - pad;
              if (iy < 0 || iy >= H || ix < 0 || ix >= W) continue;
              acc += dout.at(o, y, x) * input.at(c, iy, ix);
            }
          g.weight[((static_cast<int64_t>(o) * C + c) * K + ky) * K + kx] = acc;
        }
  for (int c = 0; c < C; ++c)
    for (int iy = 0; iy < H; ++iy)
      for (int ix = 0; ix < W; ++ix) {
        T acc = T(0);
        for (int o = 0; o < O; ++o)
          for (int ky = 0; ky < K; ++ky)
            for (int kx = 0; kx < K; ++kx) {
              int y = iy - ky + pad, x = ix - kx + pad;
              if (y < 0 || y >= Ho || x < 0 || x >= Wo) continue;
              acc += dout.at(o, y, x) * weight[((static_cast<int64_t>(o) * C + c) * K + ky) * K + kx];
            }
        g.input.at(c, iy, ix) = acc;
      }
  return g;
}

template <typename T>
Conv2dGrads<T> conv2d_bwd(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& dout,
                          int stride = 1, int pad = 0) {
  detail::conv2d_check(input.shape(), weight.shape(), std::vector<int>{weight.dim(0)}, stride, pad);
  const int C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const int O = weight.dim(0), K = weight.dim(2);
  const int Ho = H + 2 * pad - K + 1, Wo = W + 2 * pad - K + 1;
  if (dout.shape() != std::vector<int>{O, Ho, Wo})
    throw ShapeMismatch("conv2d_bwd: dout " + dout.shape_str() + ", want [" + std::to_string(O) + "x" +
                        std::to_string(Ho) + "x" + std::to_string(Wo) + "]");

  Conv2dGrads<T> g{Tensor<T>({C, H, W}), Tensor<T>({O, C, K, K}), Tensor<T>({O})};
  const T* in = input.data();
  const T* dp = dout.data();
  const T* wts = weight.data();

  // dBias and dWeight: one thread owns all accumulators of output channel o.
#pragma omp parallel for schedule(static)
  for (int o = 0; o < O; ++o) {
    const T* dplane = dp + static_cast<int64_t>(o) * Ho * Wo;
    T acc = T(0);
    for (int64_t i = 0; i < static_cast<int64_t>(Ho) * Wo; ++i) acc += dplane[i];
    g.bias[o] = acc;
    for (int c = 0; c < C; ++c) {
      const T* cin = in + static_cast<int64_t>(c) * H * W;
      for (int ky = 0; ky < K; ++ky) {
        const int y_lo = std::max(0, pad - ky);
        const int y_hi = std::min(Ho, H + pad - ky);
        for (int kx = 0; kx < K; ++kx) {
          const int x_lo = std::max(0, pad - kx);
          const int x_hi = std::min(Wo, W + pad - kx);
          T wacc = T(0);
          for (int y = y_lo; y < y_hi; ++y) {
            const T* drow = dplane + static_cast<int64_t>(y) * Wo;
            const T* irow = cin + static_cast<int64_t>(y + ky - pad) * W + (kx - pad);
            for (int x = x_lo; x < x_hi; ++x) wacc += drow[x] * irow[x];
          }
          g.weight[((static_cast<int64_t>(o) * C + c) * K + ky) * K + kx] = wacc;
        }
      }
    }
  }

  // dInput: one thread owns input channel c.
  T* dip = g.input.data();
#pragma omp parallel for schedule(static)
  for (int c = 0; c < C; ++c) {
    T* cplane = dip + static_cast<int64_t>(c) * H * W;
    for (int o = 0; o < O; ++o) {
      const T* dplane = dp + static_cast<int64_t>(o) * Ho * Wo;
      for (int ky = 0; ky < K; ++ky) {
        const int y_lo = std::max(0, pad - ky);
        const int y_hi = std::min(Ho, H + pad - ky);
        for (int kx = 0; kx < K; ++kx) {
          const T w = wts[((static_cast<int64_t>(o) * C + c) * K + ky) * K + kx];
          const int x_lo = std::max(0, pad - kx);
          const int x_hi = std::min(Wo, W + pad - kx);
          for (int y = y_lo; y < y_hi; ++y) {
            const T* drow = dplane + static_cast<int64_t>(y) * Wo;
            T* irow = cplane + static_cast<int64_t>(y + ky - pad) * W + (kx - pad);
            for (int x = x_lo; x < x_hi; ++x) irow[x] += w * drow[x];
          }
        }
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// upconv2x2: transposed convolution, stride 2, no padding. Each output pixel
// receives exactly one kernel tap, so the op is a pure gather:
//   out[o,Y,X] = bias[o] + sum_c in[c,Y/2,X/2] * w[c,o,Y%2,X%2]

namespace detail {
inline void upconv_check(const std::vector<int>& in, const std::vector<int>& w, const std::vector<int>& b) {
  if (in.size() != 3) throw ShapeMismatch("upconv2x2: input rank " + std::to_string(in.size()) + ", want 3");
  if (w.size() != 4 || w[2] != 2 || w[3] != 2)
    throw ShapeMismatch("upconv2x2: weight must be CxOx2x2");
  if (w[0] != in[0])
    throw ShapeMismatch("upconv2x2: weight expects " + std::to_string(w[0]) + " input channels, input has " +
                        std::to_string(in[0]));
  if (b.size() != 1 || b[0] != w[1])
    throw ShapeMismatch("upconv2x2: bias channels must equal weight output channels " + std::to_string(w[1]));
}
}  // namespace detail

template <typename T>
Tensor<T> upconv2x2_fwd_ref(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& bias) {
  detail::upconv_check(input.shape(), weight.shape(), bias.shape());
  const int C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const int O = weight.dim(1);
  Tensor<T> out({O, 2 * H, 2 * W});
  for (int o = 0; o < O; ++o)
    for (int Y = 0; Y < 2 * H; ++Y)
      for (int X = 0; X < 2 * W; ++X) {
        T acc = bias[o];
        for (int c = 0; c < C; ++c)
          acc += input.at(c, Y / 2, X / 2) *
                 weight[((static_cast<int64_t>(c) * O + o) * 2 + (Y & 1)) * 2 + (X & 1)];
        out.at(o, Y, X) = acc;
      }
  detail::check_finite(out, "upconv2x2_fwd_ref");
  return out;
}

template <typename T>
Tensor<T> upconv2x2_fwd(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& bias) {
  detail::upconv_check(input.shape(), weight.shape(), bias.shape());
  const int C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const int O = weight.dim(1);
  Tensor<T> out({O, 2 * H, 2 * W});
  const T* in = input.data();
  T* op = out.data();
#pragma omp parallel for schedule(static)
  for (int o = 0; o < O; ++o) {
    T* plane = op + static_cast<int64_t>(o) * 4 * H * W;
    const T bo = bias[o];
    for (int Y = 0; Y < 2 * H; ++Y) {
      T* orow = plane + static_cast<int64_t>(Y) * 2 * W;
      const int ky = Y & 1;
      for (int X = 0; X < 2 * W; ++X) {
        const int kx = X & 1;
        const T* ipix = in + static_cast<int64_t>(Y / 2) * W + (X / 2);
        T acc = bo;
        for (int c = 0; c < C; ++c)
          acc += ipix[static_cast<int64_t>(c) * H * W] *
                 weight[((static_cast<int64_t>(c) * O + o) * 2 + ky) * 2 + kx];
        orow[X] = acc;
      }
    }
  }
  detail::check_finite(out, "upconv2x2_fwd");
  return out;
}

template <typename T>
Conv2dGrads<T> upconv2x2_bwd_ref(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& dout) {
  detail::upconv_check(input.shape(), weight.shape(), std::vector<int>{weight.dim(1)});
  const int C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const int O = weight.dim(1);
  if (dout.shape() != std::vector<int>{O, 2 * H, 2 * W})
    throw ShapeMismatch("upconv2x2_bwd: dout " + dout.shape_str() + ", want [" + std::to_string(O) + "x" +
                        std::to_string(2 * H) + "x" + std::to_string(2 * W) + "]");
  Conv2dGrads<T> g{Tensor<T>({C, H, W}), Tensor<T>({C, O, 2, 2}), Tensor<T>({O})};
  for (int o = 0; o < O; ++o) {
    T acc = T(0);
    for (int Y = 0; Y < 2 * H; ++Y)
      for (int X = 0; X < 2 * W; ++X) acc += dout.at(o, Y, X);
    g.bias[o] = acc;
  }
  for (int c = 0; c < C; ++c)
    for (int o = 0; o < O; ++o)
      for (int ky = 0; ky < 2; ++ky)
        for (int kx = 0; kx < 2; ++kx) {
          T acc = T(0);
          for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x) acc += input.at(c, y, x) * dout.at(o, 2 * y + ky, 2 * x + kx);
          g.weight[((static_cast<int64_t>(c) * O + o) * 2 + ky) * 2 + kx] = acc;
        }
  for (int c = 0; c < C; ++c)
    for (int y = 0; y < H; ++y)
      for (int x = 0; x < W; ++x) {
        T acc = T(0);
        for (int o = 0; o < O; ++o)
          for (int ky = 0; ky < 2; ++ky)
            for (int kx = 0; kx < 2; ++kx)
              acc += weight[((static_cast<int64_t>(c) * O + o) * 2 + ky) * 2 + kx] *
                     dout.at(o, 2 * y + ky, 2 * x + kx);
        g.input.at(c, y, x) = acc;
      }
  return g;
}

template <typename T>
Conv2dGrads<T> upconv2x2_bwd(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& dout) {
  detail::upconv_check(input.shape(), weight.shape(), std::vector<int>{weight.dim(1)});
  const int C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const int O = weight.dim(1);
  if (dout.shape() != std::vector<int>{O, 2 * H, 2 * W})
    throw ShapeMismatch("upconv2x2_bwd: dout " + dout.shape_str() + ", want [" + std::to_string(O) + "x" +
                        std::to_string(2 * H) + "x" + std::to_string(2 * W) + "]");
  Conv2dGrads<T> g{Tensor<T>({C, H, W}), Tensor<T>({C, O, 2, 2}), Tensor<T>({O})};

#pragma omp parallel for schedule(static)
  for (int o = 0; o < O; ++o) {
    T acc = T(0);
    for (int Y = 0; Y < 2 * H; ++Y)
      for (int X = 0; X < 2 * W; ++X) acc += dout.at(o, Y, X);
    g.bias[o] = acc;
  }
#pragma omp parallel for schedule(static)
  for (int c = 0; c < C; ++c) {
    for (int o = 0; o < O; ++o)
      for (int ky = 0; ky < 2; ++ky)
        for (int kx = 0; kx < 2; ++kx) {
          T acc = T(0);
          for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x) acc += input.at(c, y, x) * dout.at(o, 2 * y + ky, 2 * x + kx);
          g.weight[((static_cast<int64_t>(c) * O + o) * 2 + ky) * 2 + kx] = acc;
        }
    for (int y = 0; y < H; ++y)
      for (int x = 0; x < W; ++x) {
        T acc = T(0);
        for (int o = 0; o < O; ++o)
          for (int ky = 0; ky < 2; ++ky)
            for (int kx = 0; kx < 2; ++kx)
              acc += weight[((static_cast<int64_t>(c) * O + o) * 2 + ky) * 2 + kx] *
                     dout.at(o, 2 * y + ky, 2 * x + kx);
        g.input.at(c, y, x) = acc;
      }
  }
  return g;
}

// ---------------------------------------------------------------------------
// maxpool 2x2, stride 2. Ties go to the earliest index in row-major window
// order; argmax stores flat indices into the input tensor.

template <typename T>
struct MaxPool2x2Out {
  Tensor<T> output;
  Tensor<int32_t> argmax;
};

template <typename T>
MaxPool2x2Out<T> maxpool2x2_fwd(const Tensor<T>& input) {
  if (input.rank() != 3) throw ShapeMismatch("maxpool2x2: input rank " + std::to_string(input.rank()) + ", want 3");
  const int C = input.dim(0), H = input.dim(1), W = input.dim(2);
  if (H % 2 != 0 || W % 2 != 0)
    throw OddSpatialDims("maxpool2x2: spatial dims " + std::to_string(H) + "x" + std::to_string(W) + " must be even");
  MaxPool2x2Out<T> r{Tensor<T>({C, H / 2, W / 2}), Tensor<int32_t>({C, H / 2, W / 2})};
  for (int c = 0; c < C; ++c)
    for (int y = 0; y < H / 2; ++y)
      for (int x = 0; x < W / 2; ++x) {
        T best = input.at(c, 2 * y, 2 * x);
        int32_t bidx = static_cast<int32_t>((static_cast<int64_t>(c) * H + 2 * y) * W + 2 * x);
        for (int wy = 0; wy < 2; ++wy)
          for (int wx = 0; wx < 2; ++wx) {
            T v = input.at(c, 2 * y + wy, 2 * x + wx);
            if (v > best) {
              best = v;
              bidx = static_cast<int32_t>((static_cast<int64_t>(c) * H + 2 * y + wy) * W + 2 * x + wx);
            }
          }
        r.output.at(c, y, x) = best;
        r.argmax.at(c, y, x) = bidx;
      }
  return r;
}

template <typename T>
Tensor<T> maxpool2x2_bwd(const Tensor<T>& dout, const Tensor<int32_t>& argmax, int in_h, int in_w) {
  if (dout.rank() != 3 || dout.shape() != argmax.shape())
    throw ShapeMismatch("maxpool2x2_bwd: dout " + dout.shape_str() + " vs argmax " + argmax.shape_str());
  const int C = dout.dim(0);
  Tensor<T> din({C, in_h, in_w});
  for (int64_t i = 0; i < dout.size(); ++i) din[argmax[i]] += dout[i];
  return din;
}

// ---------------------------------------------------------------------------
// elementwise

template <typename T>
Tensor<T> relu_fwd(const Tensor<T>& input) {
  Tensor<T> out(input.shape());
  for (int64_t i = 0; i < input.size(); ++i) out[i] = input[i] > T(0) ? input[i] : T(0);
  return out;
}

template <typename T>
Tensor<T> relu_bwd(const Tensor<T>& input, const Tensor<T>& dout) {
  if (!input.same_shape(dout))
    throw ShapeMismatch("relu_bwd: input " + input.shape_str() + " vs dout " + dout.shape_str());
  Tensor<T> din(input.shape());
  for (int64_t i = 0; i < input.size(); ++i) din[i] = input[i] > T(0) ? dout[i] : T(0);
  return din;
}

// Numerically stable split form: never evaluates exp of a large positive.
template <typename T>
Tensor<T> sigmoid_fwd(const Tensor<T>& input) {
  Tensor<T> out(input.shape());
  for (int64_t i = 0; i < input.size(); ++i) {
    T x = input[i];
    if (x >= T(0)) {
      out[i] = T(1) / (T(1) + std::exp(-x));
    } else {
      T e = std::exp(x);
      out[i] = e / (T(1) + e);
    }
  }
  detail::check_finite(out, "sigmoid_fwd");
  return out;
}

// Takes the forward *output* s.
template <typename T>
Tensor<T> sigmoid_bwd(const Tensor<T>& output, const Tensor<T>& dout) {
  if (!output.same_shape(dout))
    throw ShapeMismatch("sigmoid_bwd: output " + output.shape_str() + " vs dout " + dout.shape_str());
  Tensor<T> din(output.shape());
  for (int64_t i = 0; i < output.size(); ++i) din[i] = dout[i] * output[i] * (T(1) - output[i]);
  return din;
}

template <typename T>
Tensor<T> concat_channels(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.rank() != 3 || b.rank() != 3 || a.dim(1) != b.dim(1) || a.dim(2) != b.dim(2))
    throw ShapeMismatch("concat_channels: " + a.shape_str() + " vs " + b.shape_str());
  Tensor<T> out({a.dim(0) + b.dim(0), a.dim(1), a.dim(2)});
  std::copy(a.data(), a.data() + a.size(), out.data());
  std::copy(b.data(), b.data() + b.size(), out.data() + a.size());
  return out;
}

// Backward of concat: splits dout back into the two channel blocks.
template <typename T>
std::pair<Tensor<T>, Tensor<T>> split_channels(const Tensor<T>& d, int c_first) {
  if (d.rank() != 3 || c_first <= 0 || c_first >= d.dim(0))
    throw ShapeMismatch("split_channels: cannot split " + d.shape_str() + " at channel " + std::to_string(c_first));
  Tensor<T> a({c_first, d.dim(1), d.dim(2)});
  Tensor<T> b({d.dim(0) - c_first, d.dim(1), d.dim(2)});
  std::copy(d.data(), d.data() + a.size(), a.data());
  std::copy(d.data() + a.size(), d.data() + d.size(), b.data());
  return {std::move(a), std::move(b)};
}

}  // namespace bladeseg
