#pragma once

#include <utility>

#include <Eigen/Core>

#include "fundcheck/projective.h"

namespace fundcheck {

using Camera = Eigen::Matrix<double, 3, 4>;

// Unit-norm kernel of a rank-3 camera. Throws InvalidCamera otherwise.
Eigen::Vector4d CameraCenter(const Camera& p, const Tolerances& tol = {});

// The bilinear form (a, b) -> det [[P1, u_a, 0], [P2, 0, u_b]], returned as
// the 3x3 matrix F with x^T F y for x in image 1 and y in image 2. The
// result is unscaled: it is zero when the centers coincide.
// Throws InvalidCamera if either camera is not rank 3.
Eigen::Matrix3d FundamentalMap(const Camera& p1, const Camera& p2,
                               const Tolerances& tol = {});

// FundamentalMap, but throws CoincidentCenters when the result vanishes
// relative to |P1|^3 |P2|^3.
Eigen::Matrix3d FundamentalOf(const Camera& p1, const Camera& p2,
                              const Tolerances& tol = {});

struct Verification {
  bool ok = false;
  double residual = 1.0;  // |M + M^T| / |M| for M = P1^T F P2
};

// F is the matrix of the pair iff P1^T F P2 is skew-symmetric.
Verification VerifyFundamental(const Camera& p1, const Camera& p2,
                               const Eigen::Matrix3d& f,
                               const Tolerances& tol = {});

// ([I|0], [[e]_x F^T | e]) with e the right kernel of F.
// Throws RankError if F is not rank 2.
std::pair<Camera, Camera> CanonicalPair(const Eigen::Matrix3d& f,
                                        const Tolerances& tol = {});

}  // namespace fundcheck
