#pragma once

#include <Eigen/Core>

namespace fundcheck {

struct Tolerances {
  double rank_tol = 1e-9;      // relative singular value cutoff
  double residual_tol = 1e-8;  // vanishing conditions, in the unit gauge
  double proj_tol = 1e-10;     // projective equality of matrices

  // Throws InvalidInput unless every field is finite and positive.
  void Validate() const;
};

// A point of P^2 stored with unit norm and its first clearly nonzero
// coordinate positive.
class ProjVector3 {
 public:
  ProjVector3() = default;
  // Throws InvalidInput on a zero or non-finite vector.
  explicit ProjVector3(const Eigen::Vector3d& raw);

  const Eigen::Vector3d& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  Eigen::Vector3d v_ = Eigen::Vector3d::UnitX();
};

// Numerical rank: singular values above rank_tol * sigma_max.
int RankWithTol(const Eigen::MatrixXd& m, double rank_tol);

// 1 - |<A,B>_F| / (|A| |B|). Zero iff A and B agree up to a nonzero scalar.
// Returns 1 if either argument is zero.
double ProjDistance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Unit kernel of a rank-2 3x3 matrix; throws RankError otherwise.
ProjVector3 RightKernel(const Eigen::Matrix3d& f, const Tolerances& tol = {});
ProjVector3 LeftKernel(const Eigen::Matrix3d& f, const Tolerances& tol = {});

// [t]_x, so that CrossMatrix(t) * v == t.cross(v).
Eigen::Matrix3d CrossMatrix(const Eigen::Vector3d& t);

// Inverse of CrossMatrix on the skew-symmetric part.
Eigen::Vector3d CrossVector(const Eigen::Matrix3d& m);

// Throws InvalidInput if any entry is NaN or infinite.
void RequireFinite(const Eigen::MatrixXd& m, const char* what);

}  // namespace fundcheck
