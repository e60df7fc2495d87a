#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "symw/error.hpp"
#include "symw/tensor.hpp"

namespace symw {

inline int conv_out_size(int in, int k, int stride, int pad) {
  const int span = in + 2 * pad - k;
  if (span < 0 || span % stride != 0)
    throw DimensionError("convolution output size not integral: input " + std::to_string(in) +
                         ", kernel " + std::to_string(k) + ", stride " + std::to_string(stride) +
                         ", pad " + std::to_string(pad));
  return span / stride + 1;
}

/// Unfolds a C x H x W image into a (C*k*k) x (H_out*W_out) matrix whose
/// column at each output position holds the receptive field, zero outside
/// the padded border. Row order is (c, ki, kj).
inline Tensor im2col(const Tensor& input, int k, int stride, int pad) {
  input.require_ndim(3);
  const int C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const int ho = conv_out_size(H, k, stride, pad);
  const int wo = conv_out_size(W, k, stride, pad);
  Tensor cols({C * k * k, ho * wo});
  const double* in = input.data();
  double* out = cols.data();
  const std::size_t ncols = static_cast<std::size_t>(ho) * wo;
  for (int c = 0; c < C; ++c) {
    const double* plane = in + static_cast<std::size_t>(c) * H * W;
    for (int ki = 0; ki < k; ++ki) {
      for (int kj = 0; kj < k; ++kj) {
        double* row = out + (static_cast<std::size_t>(c) * k * k + ki * k + kj) * ncols;
        for (int oh = 0; oh < ho; ++oh) {
          const int ih = oh * stride - pad + ki;
          if (ih < 0 || ih >= H) {
            for (int ow = 0; ow < wo; ++ow) row[static_cast<std::size_t>(oh) * wo + ow] = 0.0;
            continue;
          }
          const double* src = plane + static_cast<std::size_t>(ih) * W;
          for (int ow = 0; ow < wo; ++ow) {
            const int iw = ow * stride - pad + kj;
            row[static_cast<std::size_t>(oh) * wo + ow] =
                (iw < 0 || iw >= W) ? 0.0 : src[iw];
          }
        }
      }
    }
  }
  return cols;
}

/// Adjoint of im2col: scatters a (C*k*k) x (H_out*W_out) matrix back onto a
/// C x H x W image, accumulating where receptive fields overlap.
inline Tensor col2im(const Tensor& cols, int C, int H, int W, int k, int stride, int pad) {
  cols.require_ndim(2);
  const int ho = conv_out_size(H, k, stride, pad);
  const int wo = conv_out_size(W, k, stride, pad);
  if (cols.dim(0) != C * k * k || cols.dim(1) != ho * wo)
    throw DimensionError("col2im: expected " + Tensor::str({C * k * k, ho * wo}) + ", got " +
                         cols.shape_str());
  Tensor img({C, H, W});
  const double* in = cols.data();
  double* out = img.data();
  const std::size_t ncols = static_cast<std::size_t>(ho) * wo;
  for (int c = 0; c < C; ++c) {
    double* plane = out + static_cast<std::size_t>(c) * H * W;
    for (int ki = 0; ki < k; ++ki) {
      for (int kj = 0; kj < k; ++kj) {
        const double* row = in + (static_cast<std::size_t>(c) * k * k + ki * k + kj) * ncols;
        for (int oh = 0; oh < ho; ++oh) {
          const int ih = oh * stride - pad + ki;
          if (ih < 0 || ih >= H) continue;
          double* dst = plane + static_cast<std::size_t>(ih) * W;
          for (int ow = 0; ow < wo; ++ow) {
            const int iw = ow * stride - pad + kj;
            if (iw >= 0 && iw < W) dst[iw] += row[static_cast<std::size_t>(oh) * wo + ow];
          }
        }
      }
    }
  }
  return img;
}

/// Unfolds a whole batch into one (C*k*k) x (B*H_out*W_out) matrix so the
/// convolution becomes a single matmul.
inline Tensor im2col_batch(const Tensor& input, int k, int stride, int pad) {
  input.require_ndim(4);
  const int B = input.dim(0), C = input.dim(1), H = input.dim(2), W = input.dim(3);
  const int ho = conv_out_size(H, k, stride, pad);
  const int wo = conv_out_size(W, k, stride, pad);
  const std::size_t per = static_cast<std::size_t>(ho) * wo;
  Tensor cols({C * k * k, static_cast<int>(per) * B});
  const std::size_t plane = static_cast<std::size_t>(C) * H * W;
  for (int b = 0; b < B; ++b) {
    Tensor one({C, H, W},
               std::vector<double>(input.data() + b * plane, input.data() + (b + 1) * plane));
    const Tensor c1 = im2col(one, k, stride, pad);
    // column block b
    for (int r = 0; r < cols.dim(0); ++r) {
      const double* src = c1.data() + static_cast<std::size_t>(r) * per;
      double* dst = cols.data() + static_cast<std::size_t>(r) * cols.dim(1) + b * per;
      for (std::size_t s = 0; s < per; ++s) dst[s] = src[s];
    }
  }
  return cols;
}

/// 2-d convolution, batch-first: input B x C_in x H x W, weight
/// C_out x C_in x k x k. Implemented as matmul over im2col.
inline Tensor conv2d(const Tensor& input, const Tensor& weight, int stride, int pad) {
  input.require_ndim(4);
  weight.require_ndim(4);
  const int B = input.dim(0), Cin = input.dim(1), H = input.dim(2), W = input.dim(3);
  const int Cout = weight.dim(0), k = weight.dim(2);
  if (weight.dim(1) != Cin)
    throw DimensionError("conv2d: weight expects " + std::to_string(weight.dim(1)) +
                         " input channels, input has " + std::to_string(Cin));
  if (weight.dim(3) != k) throw DimensionError("conv2d: kernel must be square, got " + weight.shape_str());
  const int ho = conv_out_size(H, k, stride, pad);
  const int wo = conv_out_size(W, k, stride, pad);
  const Tensor cols = im2col_batch(input, k, stride, pad);
  const Tensor wmat = weight.reshaped({Cout, Cin * k * k});
  const Tensor prod = matmul(wmat, cols);  // Cout x (B*ho*wo)
  Tensor out({B, Cout, ho, wo});
  const std::size_t per = static_cast<std::size_t>(ho) * wo;
  for (int co = 0; co < Cout; ++co) {
    const double* src = prod.data() + static_cast<std::size_t>(co) * prod.dim(1);
    for (int b = 0; b < B; ++b) {
      double* dst = out.data() + ((static_cast<std::size_t>(b) * Cout + co) * per);
      for (std::size_t s = 0; s < per; ++s) dst[s] = src[b * per + s];
    }
  }
  return out;
}

struct Conv2dGrads {
  Tensor input;   // B x C_in x H x W
  Tensor weight;  // C_out x C_in x k x k
};

/// Gradients of conv2d w.r.t. input and weight given the output gradient.
inline Conv2dGrads conv2d_backward(const Tensor& input, const Tensor& weight,
                                   const Tensor& gout, int stride, int pad) {
  const int B = input.dim(0), Cin = input.dim(1), H = input.dim(2), W = input.dim(3);
  const int Cout = weight.dim(0), k = weight.dim(2);
  const int ho = gout.dim(2), wo = gout.dim(3);
  const std::size_t per = static_cast<std::size_t>(ho) * wo;
  // Rearrange gout to Cout x (B*ho*wo).
  Tensor gmat({Cout, B * ho * wo});
  for (int b = 0; b < B; ++b)
    for (int co = 0; co < Cout; ++co) {
      const double* src = gout.data() + (static_cast<std::size_t>(b) * Cout + co) * per;
      double* dst = gmat.data() + static_cast<std::size_t>(co) * gmat.dim(1) + b * per;
      for (std::size_t s = 0; s < per; ++s) dst[s] = src[s];
    }
  const Tensor cols = im2col_batch(input, k, stride, pad);
  const Tensor wmat = weight.reshaped({Cout, Cin * k * k});
  Conv2dGrads g;
  g.weight = matmul_bt(gmat, cols).reshaped({Cout, Cin, k, k});
  const Tensor gcols = matmul_at(wmat, gmat);  // (Cin*k*k) x (B*ho*wo)
  g.input = Tensor({B, Cin, H, W});
  for (int b = 0; b < B; ++b) {
    Tensor block({Cin * k * k, ho * wo});
    for (int r = 0; r < block.dim(0); ++r) {
      const double* src = gcols.data() + static_cast<std::size_t>(r) * gcols.dim(1) + b * per;
      double* dst = block.data() + static_cast<std::size_t>(r) * per;
      for (std::size_t s = 0; s < per; ++s) dst[s] = src[s];
    }
    const Tensor one = col2im(block, Cin, H, W, k, stride, pad);
    double* dst = g.input.data() + static_cast<std::size_t>(b) * Cin * H * W;
    for (std::size_t s = 0; s < one.size(); ++s) dst[s] = one[s];
  }
  return g;
}

}  // namespace symw
