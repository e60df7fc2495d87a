#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "symw/error.hpp"
#include "symw/tensor.hpp"

namespace symw {

/// Symmetric matrix stored as its upper triangle only, row-major: entry
/// (i,j) with i <= j lives at offset i*n - i*(i-1)/2 + (j-i). Storage is
/// n(n+1)/2 doubles, about half of the dense n*n.
class PackedSymmetric {
 public:
  explicit PackedSymmetric(int n) : n_(n), data_(packed_size(n), 0.0) {}

  PackedSymmetric(int n, std::vector<double> data) : n_(n), data_(std::move(data)) {
    if (data_.size() != packed_size(n))
      throw DimensionError("packed storage for order " + std::to_string(n) + " needs " +
                           std::to_string(packed_size(n)) + " values, got " +
                           std::to_string(data_.size()));
  }

  static std::size_t packed_size(int n) {
    return static_cast<std::size_t>(n) * (n + 1) / 2;
  }

  int order() const { return n_; }
  std::size_t stored() const { return data_.size(); }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& vec() const { return data_; }

  // Offset of (i,j), valid for i <= j.
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
           (j - i);
  }

  double& upper(int i, int j) { return data_[index(i, j)]; }
  double upper(int i, int j) const { return data_[index(i, j)]; }

  // Full-matrix access; mirrors across the diagonal.
  double get(int i, int j) const { return i <= j ? upper(i, j) : upper(j, i); }

 private:
  int n_;
  std::vector<double> data_;
};

/// Packs a symmetric dense matrix. Entries may disagree across the diagonal
/// by at most `tol`; the upper triangle wins.
inline PackedSymmetric pack_symmetric(const Tensor& s, double tol) {
  s.require_ndim(2);
  const int n = s.dim(0);
  if (s.dim(1) != n) throw DimensionError("pack_symmetric needs a square matrix, got " + s.shape_str());
  double worst = 0.0;
  int wi = 0, wj = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dev = std::fabs(s(i, j) - s(j, i));
      if (dev > worst) {
        worst = dev;
        wi = i;
        wj = j;
      }
    }
  if (worst > tol)
    throw AsymmetryError("matrix is asymmetric: |s(" + std::to_string(wi) + "," +
                             std::to_string(wj) + ") - s(" + std::to_string(wj) + "," +
                             std::to_string(wi) + ")| = " + std::to_string(worst) +
                             " exceeds tolerance " + std::to_string(tol),
                         worst, wi, wj);
  PackedSymmetric p(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.upper(i, j) = s(i, j);
  return p;
}

inline Tensor unpack(const PackedSymmetric& p) {
  const int n = p.order();
  Tensor s({n, n});
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = p.upper(i, j);
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

/// y = S * x with S in packed form. Each stored element is read exactly once
/// and serves both (i,j) and (j,i).
inline Tensor symv_packed(const PackedSymmetric& p, const Tensor& x) {
  const int n = p.order();
  if (x.ndim() != 1 || x.dim(0) != n)
    throw DimensionError("symv_packed: vector length must be " + std::to_string(n) +
                         ", got " + x.shape_str());
  Tensor y({n});
  const double* pd = p.data();
  const double* xd = x.data();
  double* yd = y.data();
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    const double xi = xd[i];
    double acc = pd[k] * xi;  // diagonal term
    ++k;
    for (int j = i + 1; j < n; ++j, ++k) {
      const double v = pd[k];
      acc += v * xd[j];
      yd[j] += v * xi;
    }
    yd[i] += acc;
  }
  return y;
}

/// Y = S * B column-wise; same single-read property per stored element.
inline Tensor symm_packed(const PackedSymmetric& p, const Tensor& b) {
  b.require_ndim(2);
  const int n = p.order();
  if (b.dim(0) != n)
    throw DimensionError("symm_packed: B must have " + std::to_string(n) + " rows, got " +
                         b.shape_str());
  const int m = b.dim(1);
  Tensor y({n, m});
  const double* pd = p.data();
  const double* bd = b.data();
  double* yd = y.data();
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    double* yi = yd + static_cast<std::size_t>(i) * m;
    const double* bi = bd + static_cast<std::size_t>(i) * m;
    {
      const double v = pd[k];
      ++k;
      for (int c = 0; c < m; ++c) yi[c] += v * bi[c];
    }
    for (int j = i + 1; j < n; ++j, ++k) {
      const double v = pd[k];
      const double* bj = bd + static_cast<std::size_t>(j) * m;
      double* yj = yd + static_cast<std::size_t>(j) * m;
      for (int c = 0; c < m; ++c) {
        yi[c] += v * bj[c];
        yj[c] += v * bi[c];
      }
    }
  }
  return y;
}

}  // namespace symw
