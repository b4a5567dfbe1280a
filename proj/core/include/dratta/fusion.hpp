#pragma once

#include "dratta/types.hpp"

namespace dratta {

/// Compress an estimate through psi: (y, R) -> (psi y, psi R psi^T).
/// The label is preserved. Throws std::invalid_argument on a dimension
/// mismatch.
ReducedEstimate reduce_estimate(const Estimate& e, const ReductionMap& map);

/// MSE-optimal combination of a full local estimate with a dimension-reduced
/// remote one under zero cross-correlation:
///
///   P    = (R1^{-1} + psi^T Rpsi^{-1} psi)^{-1}
///   xhat = P (R1^{-1} y1 + psi^T Rpsi^{-1} ypsi)
///
/// The result covariance is symmetrized and never worse than the local one
/// (R1 - P stays positive semidefinite). Throws NumericError when an
/// intermediate matrix is numerically singular.
FusedEstimate kalman_fuse(const Estimate& local, const ReducedEstimate& reduced);

/// trace(P): the scalar loss used to score a fused estimate.
double fusion_loss(const FusedEstimate& fused);

}  // namespace dratta
