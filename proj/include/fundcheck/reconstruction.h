#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fundcheck/fundamental.h"
#include "fundcheck/fundamental_set.h"
#include "fundcheck/types.h"

namespace fundcheck {

struct Reconstruction {
  std::vector<Camera> cameras;
  double residual = 0.0;  // worst ProjDistance(psi(P_i, P_j), F^{ij})
  std::pair<int, int> worst_edge{0, 1};
  Uniqueness uniqueness = Uniqueness::kUnique;
};

// Camera P_v with P_a^T F^{av} P_v and P_b^T F^{bv} P_v skew-symmetric, as
// the least-squares null vector of the stacked linear system. Throws
// DegenerateConfiguration when the null space is not one-dimensional.
Camera ExtendCamera(const Camera& p_a, const Eigen::Matrix3d& f_av,
                    const Camera& p_b, const Eigen::Matrix3d& f_bv,
                    const Tolerances& tol = {});

// Worst ProjDistance over the pairs present in `set`.
double ReconstructionResidual(const FundamentalSet& set,
                              const std::vector<Camera>& cameras,
                              std::pair<int, int>* worst_edge = nullptr,
                              const Tolerances& tol = {});

// Cameras for a complete compatible set. Collinear configurations are
// delegated to ReconstructCollinear. Throws ReconstructionFailed naming the
// worst pair when the residual exceeds residual_tol, DegenerateConfiguration
// when no pair can anchor the reconstruction.
Reconstruction ReconstructComplete(const FundamentalSet& set,
                                   const Tolerances& tol = {});

// One member of the family of collinear solutions. `offsets` are the
// distinct nonzero parameters placing centers 2..n on the line; defaults to
// 2, 3, ..., n.
Reconstruction ReconstructCollinear(const FundamentalSet& set,
                                    const Tolerances& tol = {},
                                    std::span<const double> offsets = {});

// True iff some invertible H maps every center of `a` onto the matching
// center of `b` (up to scale).
bool CentersEquivalent(const std::vector<Camera>& a,
                       const std::vector<Camera>& b,
                       const Tolerances& tol = {});

}  // namespace fundcheck
