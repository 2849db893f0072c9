#include "curvkit/curvature.hpp"

#include "curvkit/error.hpp"

namespace curvkit {

Tensor riemann(const Metric& m, const Christoffel& gamma) {
  std::size_t n = m.dim();
  // mixed[a][b][c][d] = R^a_bcd, antisymmetric in (c, d)
  Tensor mixed(n, {true, false, false, false});
  std::vector<NormalForm> dgamma(n * n * n * n);  // [c][a][d][b] = ∂_c Γ^a_db
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t d = 0; d < n; ++d)
        for (std::size_t b = d; b < n; ++b) {
          NormalForm v = gamma(a, d, b).derivative(m.coordinate(c));
          dgamma[((c * n + a) * n + d) * n + b] = v;
          dgamma[((c * n + a) * n + b) * n + d] = v;
        }
  auto dg = [&](std::size_t c, std::size_t a, std::size_t d, std::size_t b) -> const NormalForm& {
    return dgamma[((c * n + a) * n + d) * n + b];
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          NormalForm v = dg(c, a, d, b) - dg(d, a, c, b);
          for (std::size_t e = 0; e < n; ++e) {
            const NormalForm& x1 = gamma(a, c, e);
            const NormalForm& y1 = gamma(e, d, b);
            if (!x1.is_zero() && !y1.is_zero()) v += x1 * y1;
            const NormalForm& x2 = gamma(a, d, e);
            const NormalForm& y2 = gamma(e, c, b);
            if (!x2.is_zero() && !y2.is_zero()) v -= x2 * y2;
          }
          mixed[{a, b, d, c}] = -v;
          mixed[{a, b, c, d}] = std::move(v);
        }
  return lower(mixed, 0, m);
}

Tensor ricci(const Tensor& riemann, const Metric& m) { return contract(riemann, 0, 3, m); }

NormalForm scalar_curvature(const Tensor& ricci, const Metric& m) { return contract(ricci, 0, 1, m)[{}]; }

namespace {

NormalForm q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return NormalForm(r);
}

void require_dimension(const Metric& m) {
  if (m.dim() < 3) throw InputError("curvature tensors need dimension at least 3");
}

}  // namespace

Tensor conformal(const Tensor& R, const Tensor& S, const NormalForm& kappa, const Metric& m) {
  require_dimension(m);
  long n = static_cast<long>(m.dim());
  Tensor g = metric_tensor(m);
  Tensor out = R - kulkarni_nomizu(g, S) * q(1, n - 2);
  if (!kappa.is_zero()) out += kulkarni_nomizu(g, g) * (kappa * q(1, 2 * (n - 2) * (n - 1)));
  return out;
}

Tensor concircular(const Tensor& R, const NormalForm& kappa, const Metric& m) {
  require_dimension(m);
  long n = static_cast<long>(m.dim());
  Tensor g = metric_tensor(m);
  if (kappa.is_zero()) return R;
  return R - kulkarni_nomizu(g, g) * (kappa * q(1, 2 * n * (n - 1)));
}

Tensor conharmonic(const Tensor& R, const Tensor& S, const Metric& m) {
  require_dimension(m);
  long n = static_cast<long>(m.dim());
  return R - kulkarni_nomizu(metric_tensor(m), S) * q(1, n - 2);
}

Tensor gaussian(const Metric& m) {
  Tensor g = metric_tensor(m);
  return kulkarni_nomizu(g, g) * q(1, 2);
}

Tensor projective(const Tensor& R, const Tensor& S, const Metric& m) {
  require_dimension(m);
  std::size_t n = m.dim();
  NormalForm c = q(1, static_cast<long>(n) - 1);
  Tensor out = R;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          NormalForm v;
          if (!m.g(i, l).is_zero() && !S[{j, k}].is_zero()) v += m.g(i, l) * S[{j, k}];
          if (!m.g(j, l).is_zero() && !S[{i, k}].is_zero()) v -= m.g(j, l) * S[{i, k}];
          if (!v.is_zero()) out[{i, j, k, l}] -= c * v;
        }
  return out;
}

Tensor riemann_squared(const Tensor& R, const Metric& m) {
  Tensor up = raise(raise(R, 2, m), 3, m);  // R_ij^pq
  std::size_t n = m.dim();
  Tensor out = Tensor::covariant(n, 4);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t qq = 0; qq < n; ++qq) {
          const NormalForm& a = up[{i, j, p, qq}];
          if (a.is_zero()) continue;
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) {
              const NormalForm& b = R[{p, qq, k, l}];
              if (!b.is_zero()) out[{i, j, k, l}] += a * b;
            }
        }
  return out;
}

CurvatureBundle::CurvatureBundle(Metric m) : metric(std::move(m)) {
  gamma = christoffel(metric);
  g = metric_tensor(metric);
  R = riemann(metric, gamma);
  R_mixed = raise(R, 3, metric);
  S = ricci(R, metric);
  S_mixed = raise(S, 0, metric);
  kappa = scalar_curvature(S, metric);
  C = conformal(R, S, kappa, metric);
  W = concircular(R, kappa, metric);
  K = conharmonic(R, S, metric);
  G = gaussian(metric);
  P = projective(R, S, metric);
  P_mixed = raise(P, 3, metric);
}

NormalForm einstein_coupling(bool natural_units) {
  if (natural_units) return NormalForm(1);
  auto& t = AtomTable::instance();
  NormalForm c = NormalForm::atom(t.parameter("c"));
  NormalForm G = NormalForm::atom(t.parameter("G"));
  NormalForm pi = NormalForm::atom(t.parameter("pi"));
  return c.pow(4) / (NormalForm(8) * pi * G);
}

Tensor energy_momentum(const CurvatureBundle& b, const NormalForm& lambda, bool natural_units) {
  NormalForm shift = b.kappa * NormalForm(Rational(1, 2)) - lambda;
  Tensor t = b.S;
  if (!shift.is_zero()) t -= b.g * shift;
  return t * einstein_coupling(natural_units);
}

}  // namespace curvkit
