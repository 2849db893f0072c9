#pragma once

#include "curvkit/geometry.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace curvkit {

using Index = std::vector<std::size_t>;

/// Dense tensor over a chart of dimension n. Each slot is contravariant (up)
/// or covariant (down); components are stored flat, first slot slowest.
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::size_t dim, std::vector<bool> up);
  static Tensor covariant(std::size_t dim, std::size_t rank) { return Tensor(dim, std::vector<bool>(rank, false)); }
  static Tensor scalar(NormalForm value);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return up_.size(); }
  const std::vector<bool>& variance() const { return up_; }
  bool up(std::size_t slot) const { return up_[slot]; }
  std::size_t size() const { return data_.size(); }

  NormalForm& operator[](const Index& i) { return data_[offset(i)]; }
  const NormalForm& operator[](const Index& i) const { return data_[offset(i)]; }
  NormalForm& flat(std::size_t k) { return data_[k]; }
  const NormalForm& flat(std::size_t k) const { return data_[k]; }
  std::size_t offset(const Index& i) const;
  Index unflatten(std::size_t k) const;

  bool is_zero() const;
  /// First nonzero component in storage order.
  std::optional<Index> first_nonzero() const;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  Tensor operator*(const NormalForm& c) const;
  friend Tensor operator*(const NormalForm& c, const Tensor& t) { return t * c; }

  /// Component-wise map, e.g. substitution at a sample point.
  Tensor map(const std::function<NormalForm(const NormalForm&)>& f) const;

 private:
  void check_shape(const Tensor& other) const;
  std::size_t dim_ = 0;
  std::vector<bool> up_;
  std::vector<NormalForm> data_;
};

/// Γ^k_ij with the symmetric lower pair.
struct Christoffel {
  std::size_t dim = 0;
  std::vector<NormalForm> data;  // k, i, j
  const NormalForm& operator()(std::size_t k, std::size_t i, std::size_t j) const {
    return data[(k * dim + i) * dim + j];
  }
};

Christoffel christoffel(const Metric& m);
Tensor metric_tensor(const Metric& m);
Tensor inverse_metric_tensor(const Metric& m);

/// ∇t with the derivative slot appended last.
Tensor covariant_derivative(const Tensor& t, const Metric& m, const Christoffel& gamma);

Tensor raise(const Tensor& t, std::size_t slot, const Metric& m);
Tensor lower(const Tensor& t, std::size_t slot, const Metric& m);
/// Contracts an up slot with a down slot, or two slots of equal variance
/// through the metric.
Tensor contract(const Tensor& t, std::size_t a, std::size_t b, const Metric& m);
Tensor tensor_product(const Tensor& a, const Tensor& b);
/// result[i_0..] = t[i_perm[0]..]: slot k of the result is slot perm[k] of t.
Tensor permute(const Tensor& t, const std::vector<std::size_t>& perm);

Tensor kulkarni_nomizu(const Tensor& a, const Tensor& e);
/// A^k for a symmetric (0,2) tensor, via the endomorphism g(𝒜X,Y) = A(X,Y).
Tensor power(const Tensor& a, const Metric& m, int k);

bool is_symmetric(const Tensor& t, std::size_t a, std::size_t b);
bool is_antisymmetric(const Tensor& t, std::size_t a, std::size_t b);

}  // namespace curvkit
