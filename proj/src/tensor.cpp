#include "curvkit/tensor.hpp"

#include "curvkit/error.hpp"

namespace curvkit {

namespace {

std::size_t ipow(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= n;
  return r;
}

}  // namespace

Tensor::Tensor(std::size_t dim, std::vector<bool> up)
    : dim_(dim), up_(std::move(up)), data_(ipow(dim, up_.size())) {}

Tensor Tensor::scalar(NormalForm value) {
  Tensor t(1, {});
  t.data_.front() = std::move(value);
  return t;
}

std::size_t Tensor::offset(const Index& i) const {
  if (i.size() != up_.size()) throw InputError("index has " + std::to_string(i.size()) + " slots, tensor has " + std::to_string(up_.size()));
  std::size_t k = 0;
  for (std::size_t s : i) {
    if (s >= dim_) throw InputError("index " + std::to_string(s + 1) + " out of range");
    k = k * dim_ + s;
  }
  return k;
}

Index Tensor::unflatten(std::size_t k) const {
  Index i(up_.size());
  for (std::size_t s = up_.size(); s-- > 0;) {
    i[s] = k % dim_;
    k /= dim_;
  }
  return i;
}

bool Tensor::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

std::optional<Index> Tensor::first_nonzero() const {
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!data_[k].is_zero()) return unflatten(k);
  return std::nullopt;
}

void Tensor::check_shape(const Tensor& other) const {
  if (dim_ != other.dim_ || up_ != other.up_) throw InputError("tensor shapes differ");
}

Tensor& Tensor::operator+=(const Tensor& other) {
  check_shape(other);
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!other.data_[k].is_zero()) data_[k] += other.data_[k];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  check_shape(other);
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!other.data_[k].is_zero()) data_[k] -= other.data_[k];
  return *this;
}

Tensor Tensor::operator*(const NormalForm& c) const {
  Tensor out = *this;
  for (auto& x : out.data_)
    if (!x.is_zero()) x *= c;
  return out;
}

Tensor Tensor::map(const std::function<NormalForm(const NormalForm&)>& f) const {
  Tensor out = *this;
  for (auto& x : out.data_)
    if (!x.is_zero()) x = f(x);
  return out;
}

Christoffel christoffel(const Metric& m) {
  std::size_t n = m.dim();
  // dg[l][i][j] = ∂_l g_ij
  std::vector<NormalForm> dg(n * n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        dg[(l * n + i) * n + j] = m.g(i, j).derivative(m.coordinate(l));
        dg[(l * n + j) * n + i] = dg[(l * n + i) * n + j];
      }
  auto d = [&](std::size_t l, std::size_t i, std::size_t j) -> const NormalForm& { return dg[(l * n + i) * n + j]; };
  // first kind: Γ_lij = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij)
  std::vector<NormalForm> first(n * n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        NormalForm v = d(i, j, l) + d(j, i, l) - d(l, i, j);
        if (!v.is_zero()) v *= NormalForm(Rational(1, 2));
        first[(l * n + i) * n + j] = v;
        first[(l * n + j) * n + i] = v;
      }
  Christoffel g;
  g.dim = n;
  g.data.resize(n * n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        NormalForm v;
        for (std::size_t l = 0; l < n; ++l) {
          const NormalForm& a = m.inv(k, l);
          const NormalForm& b = first[(l * n + i) * n + j];
          if (!a.is_zero() && !b.is_zero()) v += a * b;
        }
        g.data[(k * n + i) * n + j] = v;
        g.data[(k * n + j) * n + i] = v;
      }
  return g;
}

Tensor metric_tensor(const Metric& m) {
  Tensor t = Tensor::covariant(m.dim(), 2);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) t[{i, j}] = m.g(i, j);
  return t;
}

Tensor inverse_metric_tensor(const Metric& m) {
  Tensor t(m.dim(), {true, true});
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) t[{i, j}] = m.inv(i, j);
  return t;
}

Tensor covariant_derivative(const Tensor& t, const Metric& m, const Christoffel& gamma) {
  std::size_t n = t.dim();
  if (n != m.dim() || gamma.dim != n) throw InputError("tensor and connection live on different charts");
  std::vector<bool> up = t.variance();
  up.push_back(false);
  Tensor out(n, up);
  std::size_t rank = t.rank();
  for (std::size_t k = 0; k < t.size(); ++k) {
    const NormalForm& x = t.flat(k);
    if (x.is_zero()) continue;
    Index idx = t.unflatten(k);
    idx.push_back(0);
    for (std::size_t d = 0; d < n; ++d) {
      idx[rank] = d;
      NormalForm dx = x.derivative(m.coordinate(d));
      if (!dx.is_zero()) out[idx] += dx;
    }
  }
  // connection terms: scatter each nonzero component of t into the slots it feeds
  for (std::size_t k = 0; k < t.size(); ++k) {
    const NormalForm& x = t.flat(k);
    if (x.is_zero()) continue;
    Index src = t.unflatten(k);
    for (std::size_t s = 0; s < rank; ++s) {
      std::size_t p = src[s];
      Index dst = src;
      dst.push_back(0);
      for (std::size_t a = 0; a < n; ++a) {
        dst[s] = a;
        for (std::size_t d = 0; d < n; ++d) {
          dst[rank] = d;
          if (t.up(s)) {
            // + Γ^a_{d p} T^{..p..}
            const NormalForm& c = gamma(a, d, p);
            if (!c.is_zero()) out[dst] += c * x;
          } else {
            // − Γ^p_{d a} T_{..p..}
            const NormalForm& c = gamma(p, d, a);
            if (!c.is_zero()) out[dst] -= c * x;
          }
        }
      }
    }
  }
  return out;
}

namespace {

Tensor change_slot(const Tensor& t, std::size_t slot, const Metric& m, bool to_up) {
  if (slot >= t.rank()) throw InputError("slot out of range");
  if (t.up(slot) == to_up) throw InputError(to_up ? "slot is already contravariant" : "slot is already covariant");
  std::vector<bool> up = t.variance();
  up[slot] = to_up;
  Tensor out(t.dim(), up);
  std::size_t n = t.dim();
  for (std::size_t k = 0; k < t.size(); ++k) {
    const NormalForm& x = t.flat(k);
    if (x.is_zero()) continue;
    Index idx = t.unflatten(k);
    std::size_t p = idx[slot];
    for (std::size_t a = 0; a < n; ++a) {
      const NormalForm& c = to_up ? m.inv(a, p) : m.g(a, p);
      if (c.is_zero()) continue;
      idx[slot] = a;
      out[idx] += c * x;
    }
  }
  return out;
}

}  // namespace

Tensor raise(const Tensor& t, std::size_t slot, const Metric& m) { return change_slot(t, slot, m, true); }
Tensor lower(const Tensor& t, std::size_t slot, const Metric& m) { return change_slot(t, slot, m, false); }

Tensor contract(const Tensor& t, std::size_t a, std::size_t b, const Metric& m) {
  if (a >= t.rank() || b >= t.rank() || a == b) throw InputError("invalid contraction slots");
  if (a > b) std::swap(a, b);
  std::vector<bool> up;
  for (std::size_t s = 0; s < t.rank(); ++s)
    if (s != a && s != b) up.push_back(t.up(s));
  std::size_t n = t.dim();
  Tensor out(n, up);
  bool mixed = t.up(a) != t.up(b);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const NormalForm& x = t.flat(k);
    if (x.is_zero()) continue;
    Index idx = t.unflatten(k);
    NormalForm w;
    if (mixed) {
      if (idx[a] != idx[b]) continue;
      w = x;
    } else {
      const NormalForm& c = t.up(a) ? m.g(idx[a], idx[b]) : m.inv(idx[a], idx[b]);
      if (c.is_zero()) continue;
      w = c * x;
    }
    Index rest;
    for (std::size_t s = 0; s < idx.size(); ++s)
      if (s != a && s != b) rest.push_back(idx[s]);
    out[rest] += w;
  }
  return out;
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim() && a.rank() && b.rank()) throw InputError("tensors live on different charts");
  std::vector<bool> up = a.variance();
  up.insert(up.end(), b.variance().begin(), b.variance().end());
  Tensor out(a.rank() ? a.dim() : b.dim(), up);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.flat(i).is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b.flat(j).is_zero()) continue;
      out.flat(i * b.size() + j) = a.flat(i) * b.flat(j);
    }
  }
  return out;
}

Tensor permute(const Tensor& t, const std::vector<std::size_t>& perm) {
  if (perm.size() != t.rank()) throw InputError("permutation size differs from tensor rank");
  std::vector<bool> up(t.rank());
  for (std::size_t k = 0; k < perm.size(); ++k) up[k] = t.up(perm[k]);
  Tensor out(t.dim(), up);
  for (std::size_t k = 0; k < out.size(); ++k) {
    Index r = out.unflatten(k);
    Index src(t.rank());
    for (std::size_t s = 0; s < perm.size(); ++s) src[perm[s]] = r[s];
    out.flat(k) = t[src];
  }
  return out;
}

bool is_symmetric(const Tensor& t, std::size_t a, std::size_t b) {
  for (std::size_t k = 0; k < t.size(); ++k) {
    Index i = t.unflatten(k);
    if (i[a] >= i[b]) continue;
    Index j = i;
    std::swap(j[a], j[b]);
    if (!equal(t.flat(k), t[j])) return false;
  }
  return true;
}

bool is_antisymmetric(const Tensor& t, std::size_t a, std::size_t b) {
  for (std::size_t k = 0; k < t.size(); ++k) {
    Index i = t.unflatten(k);
    if (i[a] > i[b]) continue;
    Index j = i;
    std::swap(j[a], j[b]);
    if (!(t.flat(k) + t[j]).is_zero()) return false;
  }
  return true;
}

Tensor kulkarni_nomizu(const Tensor& a, const Tensor& e) {
  auto check = [](const Tensor& t) {
    if (t.rank() != 2 || t.up(0) || t.up(1)) throw InputError("Kulkarni-Nomizu product needs (0,2) tensors");
    if (!is_symmetric(t, 0, 1)) throw InputError("Kulkarni-Nomizu product needs symmetric tensors");
  };
  check(a);
  check(e);
  std::size_t n = a.dim();
  Tensor out = Tensor::covariant(n, 4);
  auto term = [](const NormalForm& x, const NormalForm& y) {
    return x.is_zero() || y.is_zero() ? NormalForm() : x * y;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          NormalForm v = term(a[{i, l}], e[{j, k}]);
          v += term(a[{j, k}], e[{i, l}]);
          v -= term(a[{i, k}], e[{j, l}]);
          v -= term(a[{j, l}], e[{i, k}]);
          out[{i, j, k, l}] = v;
        }
  return out;
}

Tensor power(const Tensor& a, const Metric& m, int k) {
  if (k < 1) throw InputError("tensor power needs k >= 1");
  if (a.rank() != 2 || a.up(0) || a.up(1)) throw InputError("tensor power needs a (0,2) tensor");
  std::size_t n = a.dim();
  // mixed[p][j] = g^{pq} A_qj
  Matrix<NormalForm> mixed(n, std::vector<NormalForm>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t q = 0; q < n; ++q)
        if (!m.inv(p, q).is_zero() && !a[{q, j}].is_zero()) mixed[p][j] += m.inv(p, q) * a[{q, j}];
  Tensor cur = a;
  for (int step = 1; step < k; ++step) {
    Tensor next = Tensor::covariant(n, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t p = 0; p < n; ++p)
          if (!cur[{i, p}].is_zero() && !mixed[p][j].is_zero()) next[{i, j}] += cur[{i, p}] * mixed[p][j];
    cur = std::move(next);
  }
  return cur;
}

}  // namespace curvkit
