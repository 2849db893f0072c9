#pragma once

#include "curvkit/tensor.hpp"

namespace curvkit {

/// R^a_bcd = ∂_c Γ^a_db − ∂_d Γ^a_cb + Γ^a_ce Γ^e_db − Γ^a_de Γ^e_cb, lowered
/// into the first slot. Ricci contracts the first and last slots.
Tensor riemann(const Metric& m, const Christoffel& gamma);
Tensor ricci(const Tensor& riemann, const Metric& m);
NormalForm scalar_curvature(const Tensor& ricci, const Metric& m);

Tensor conformal(const Tensor& R, const Tensor& S, const NormalForm& kappa, const Metric& m);
Tensor concircular(const Tensor& R, const NormalForm& kappa, const Metric& m);
Tensor conharmonic(const Tensor& R, const Tensor& S, const Metric& m);
Tensor gaussian(const Metric& m);
Tensor projective(const Tensor& R, const Tensor& S, const Metric& m);
/// D_ijkl = R_ij^pq R_pqkl
Tensor riemann_squared(const Tensor& R, const Metric& m);

/// Everything derived from one metric, computed once.
struct CurvatureBundle {
  explicit CurvatureBundle(Metric metric);

  Metric metric;
  Christoffel gamma;
  Tensor g;
  Tensor R;        // (0,4)
  Tensor R_mixed;  // (1,3), last slot raised
  Tensor S;
  Tensor S_mixed;  // 𝒮^i_j, first slot raised
  NormalForm kappa;
  Tensor C, W, K, G, P;
  Tensor P_mixed;
};

/// Coupling constant of the field equations: c^4/(8 pi G), or 1.
NormalForm einstein_coupling(bool natural_units);
/// T = coupling [S − (κ/2 − Λ) g]
Tensor energy_momentum(const CurvatureBundle& b, const NormalForm& lambda, bool natural_units = false);

}  // namespace curvkit
