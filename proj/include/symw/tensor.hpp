#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symw/error.hpp"

namespace symw {

/// Dense n-dimensional array of doubles, row-major. The universal value type:
/// weights, activations, gradients are all Tensors. Shape is fixed at
/// construction.
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
    data_.assign(numel(shape_), 0.0);
  }

  Tensor(std::vector<int> shape, std::vector<double> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != numel(shape_))
      throw DimensionError("tensor data length " + std::to_string(data_.size()) +
                           " does not match shape " + shape_str());
  }

  static std::size_t numel(const std::vector<int>& shape) {
    std::size_t n = 1;
    for (int d : shape) {
      if (d <= 0) throw DimensionError("tensor dimensions must be positive");
      n *= static_cast<std::size_t>(d);
    }
    return n;
  }

  const std::vector<int>& shape() const { return shape_; }
  int ndim() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& vec() { return data_; }
  const std::vector<double>& vec() const { return data_; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  // 2-D access.
  double& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * dim(1) + j];
  }
  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * dim(1) + j];
  }

  // 3-D access.
  double& operator()(int a, int b, int c) {
    return data_[(static_cast<std::size_t>(a) * dim(1) + b) * dim(2) + c];
  }
  double operator()(int a, int b, int c) const {
    return data_[(static_cast<std::size_t>(a) * dim(1) + b) * dim(2) + c];
  }

  // 4-D access.
  double& operator()(int a, int b, int c, int d) {
    return data_[((static_cast<std::size_t>(a) * dim(1) + b) * dim(2) + c) * dim(3) + d];
  }
  double operator()(int a, int b, int c, int d) const {
    return data_[((static_cast<std::size_t>(a) * dim(1) + b) * dim(2) + c) * dim(3) + d];
  }

  int rows() const {
    require_ndim(2);
    return shape_[0];
  }
  int cols() const {
    require_ndim(2);
    return shape_[1];
  }

  void require_ndim(int n) const {
    if (ndim() != n)
      throw DimensionError("expected " + std::to_string(n) + "-d tensor, got shape " +
                           shape_str());
  }

  /// Same data viewed under a new shape; element count must match.
  Tensor reshaped(std::vector<int> shape) const& {
    if (numel(shape) != size())
      throw DimensionError("reshape to " + str(shape) + " from " + shape_str());
    return Tensor(std::move(shape), data_);
  }
  Tensor reshaped(std::vector<int> shape) && {
    if (numel(shape) != size())
      throw DimensionError("reshape to " + str(shape) + " from " + shape_str());
    return Tensor(std::move(shape), std::move(data_));
  }

  void fill(double v) { data_.assign(data_.size(), v); }

  std::string shape_str() const { return str(shape_); }

  static std::string str(const std::vector<int>& shape) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
    os << "]";
    return os.str();
  }

 private:
  std::vector<int> shape_;
  std::vector<double> data_;
};

/// C = A * B for 2-d tensors. Per output element the reduction over k runs
/// strictly left to right, so results are reproducible bit for bit.
inline Tensor matmul(const Tensor& a, const Tensor& b) {
  a.require_ndim(2);
  b.require_ndim(2);
  const int m = a.dim(0), k = a.dim(1), n = b.dim(1);
  if (b.dim(0) != k)
    throw DimensionError("matmul inner dimensions disagree: " + a.shape_str() + " * " +
                         b.shape_str());
  Tensor c({m, n});
  const double* A = a.data();
  const double* B = b.data();
  double* C = c.data();
  int i = 0;
  for (; i + 4 <= m; i += 4) {
    double* c0 = C + static_cast<std::size_t>(i) * n;
    double* c1 = c0 + n;
    double* c2 = c1 + n;
    double* c3 = c2 + n;
    for (int p = 0; p < k; ++p) {
      const double a0 = A[static_cast<std::size_t>(i) * k + p];
      const double a1 = A[static_cast<std::size_t>(i + 1) * k + p];
      const double a2 = A[static_cast<std::size_t>(i + 2) * k + p];
      const double a3 = A[static_cast<std::size_t>(i + 3) * k + p];
      const double* brow = B + static_cast<std::size_t>(p) * n;
      for (int j = 0; j < n; ++j) {
        c0[j] += a0 * brow[j];
        c1[j] += a1 * brow[j];
        c2[j] += a2 * brow[j];
        c3[j] += a3 * brow[j];
      }
    }
  }
  for (; i < m; ++i) {
    double* crow = C + static_cast<std::size_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      const double av = A[static_cast<std::size_t>(i) * k + p];
      const double* brow = B + static_cast<std::size_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
  return c;
}

/// C = A * B^T without materializing the transpose.
inline Tensor matmul_bt(const Tensor& a, const Tensor& b) {
  a.require_ndim(2);
  b.require_ndim(2);
  const int m = a.dim(0), k = a.dim(1), n = b.dim(0);
  if (b.dim(1) != k)
    throw DimensionError("matmul_bt inner dimensions disagree: " + a.shape_str() + " * " +
                         b.shape_str() + "^T");
  Tensor c({m, n});
  const double* A = a.data();
  const double* B = b.data();
  double* C = c.data();
  for (int i = 0; i < m; ++i) {
    const double* arow = A + static_cast<std::size_t>(i) * k;
    double* crow = C + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* brow = B + static_cast<std::size_t>(j) * k;
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] = acc;
    }
  }
  return c;
}

/// C = A^T * B without materializing the transpose.
inline Tensor matmul_at(const Tensor& a, const Tensor& b) {
  a.require_ndim(2);
  b.require_ndim(2);
  const int k = a.dim(0), m = a.dim(1), n = b.dim(1);
  if (b.dim(0) != k)
    throw DimensionError("matmul_at inner dimensions disagree: " + a.shape_str() + "^T * " +
                         b.shape_str());
  Tensor c({m, n});
  const double* A = a.data();
  const double* B = b.data();
  double* C = c.data();
  for (int p = 0; p < k; ++p) {
    const double* arow = A + static_cast<std::size_t>(p) * m;
    const double* brow = B + static_cast<std::size_t>(p) * n;
    for (int i = 0; i < m; ++i) {
      const double av = arow[i];
      double* crow = C + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
  return c;
}

inline Tensor transpose(const Tensor& a) {
  a.require_ndim(2);
  const int m = a.dim(0), n = a.dim(1);
  Tensor t({n, m});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) t(j, i) = a(i, j);
  return t;
}

}  // namespace symw
