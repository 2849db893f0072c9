#pragma once

#include "curvkit/tensor.hpp"

namespace curvkit {

/// D·B: the endomorphism 𝒟(X_j, X_l) acting on B as a derivation, with the
/// two new covariant slots appended after those of B.
/// (D·B)_{I jl} = −Σ_s g^{pq} D_{j l i_s q} B_{..p..} on covariant slots and
/// + g^{aq} D_{j l p q} B^{..p..} on contravariant ones.
Tensor curvature_action(const Tensor& D, const Tensor& B, const Metric& m);

/// Q(A,B) = (X_j ∧_A X_l)·B with (X ∧_A Y)Z = A(Y,Z)X − A(X,Z)Y, so that
/// Q(A,B)_{I jl} = Σ_s A_{j i_s} B_{..l..} − A_{l i_s} B_{..j..}
Tensor tachibana(const Tensor& A, const Tensor& B, const Metric& m);

}  // namespace curvkit
