#include "curvkit/actions.hpp"

#include "curvkit/error.hpp"

namespace curvkit {

namespace {

void require_covariant(const Tensor& t, std::size_t rank, const char* what) {
  if (t.rank() != rank) throw InputError(std::string(what) + " has the wrong rank");
  for (std::size_t s = 0; s < rank; ++s)
    if (t.up(s)) throw InputError(std::string(what) + " must be covariant");
}

std::vector<bool> appended(const Tensor& b) {
  std::vector<bool> up = b.variance();
  up.push_back(false);
  up.push_back(false);
  return up;
}

}  // namespace

Tensor curvature_action(const Tensor& D, const Tensor& B, const Metric& m) {
  require_covariant(D, 4, "curvature operand");
  std::size_t n = m.dim();
  if (D.dim() != n || B.dim() != n) throw InputError("tensors live on different charts");
  // endo[p][j][l][i] = g^{pq} D_{j l i q}
  std::vector<NormalForm> endo(n * n * n * n);
  auto at = [n](std::size_t p, std::size_t j, std::size_t l, std::size_t i) { return ((p * n + j) * n + l) * n + i; };
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < n; ++q) {
          const NormalForm& d = D[{j, l, i, q}];
          if (d.is_zero()) continue;
          for (std::size_t p = 0; p < n; ++p)
            if (!m.inv(p, q).is_zero()) endo[at(p, j, l, i)] += m.inv(p, q) * d;
        }
  std::size_t k = B.rank();
  Tensor out(n, appended(B));
  for (std::size_t f = 0; f < B.size(); ++f) {
    const NormalForm& b = B.flat(f);
    if (b.is_zero()) continue;
    Index src = B.unflatten(f);
    Index dst = src;
    dst.push_back(0);
    dst.push_back(0);
    for (std::size_t s = 0; s < k; ++s) {
      std::size_t p = src[s];
      for (std::size_t a = 0; a < n; ++a) {
        dst[s] = a;
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t l = 0; l < n; ++l) {
            // covariant: −𝒟^p_{j l a} B_{..p..}; contravariant: +𝒟^a_{j l p} B^{..p..}
            const NormalForm& e = B.up(s) ? endo[at(a, j, l, p)] : endo[at(p, j, l, a)];
            if (e.is_zero()) continue;
            dst[k] = j;
            dst[k + 1] = l;
            if (B.up(s))
              out[dst] += e * b;
            else
              out[dst] -= e * b;
          }
      }
      dst[s] = src[s];
    }
  }
  return out;
}

Tensor tachibana(const Tensor& A, const Tensor& B, const Metric& m) {
  require_covariant(A, 2, "Tachibana operand");
  if (!is_symmetric(A, 0, 1)) throw InputError("Tachibana operator needs a symmetric tensor");
  std::size_t n = m.dim();
  if (A.dim() != n || B.dim() != n) throw InputError("tensors live on different charts");
  std::size_t k = B.rank();
  Tensor out(n, appended(B));
  for (std::size_t f = 0; f < B.size(); ++f) {
    const NormalForm& b = B.flat(f);
    if (b.is_zero()) continue;
    Index src = B.unflatten(f);
    Index dst = src;
    dst.push_back(0);
    dst.push_back(0);
    for (std::size_t s = 0; s < k; ++s) {
      std::size_t v = src[s];
      if (!B.up(s)) {
        // B_{..v..} contributes −A_{l a} when v = j and A_{j a} when v = l, slot s set to a
        for (std::size_t a = 0; a < n; ++a) {
          dst[s] = a;
          for (std::size_t other = 0; other < n; ++other) {
            const NormalForm& c = A[{other, a}];
            if (c.is_zero()) continue;
            dst[k] = v;
            dst[k + 1] = other;
            out[dst] -= c * b;
            dst[k] = other;
            dst[k + 1] = v;
            out[dst] += c * b;
          }
        }
      } else {
        // B^{..p..}: − A_{j p} at a = l, + A_{l p} at a = j
        std::size_t p = v;
        for (std::size_t other = 0; other < n; ++other) {
          const NormalForm& c = A[{other, p}];
          if (c.is_zero()) continue;
          for (std::size_t a = 0; a < n; ++a) {
            dst[s] = a;
            dst[k] = other;
            dst[k + 1] = a;
            out[dst] -= c * b;
            dst[k] = a;
            dst[k + 1] = other;
            out[dst] += c * b;
          }
        }
      }
      dst[s] = src[s];
    }
  }
  return out;
}

}  // namespace curvkit
