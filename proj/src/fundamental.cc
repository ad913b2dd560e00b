#include "fundcheck/fundamental.h"

#include <cmath>

#include <Eigen/Dense>

#include "fundcheck/error.h"

namespace fundcheck {
namespace {

void RequireCamera(const Camera& p, const Tolerances& tol) {
  RequireFinite(p, "camera");
  if (RankWithTol(p, tol.rank_tol) != 3) {
    throw Error(ErrorCode::kInvalidCamera, "camera matrix is not rank 3");
  }
}

}  // namespace

Eigen::Vector4d CameraCenter(const Camera& p, const Tolerances& tol) {
  RequireCamera(p, tol);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p, Eigen::ComputeFullV);
  Eigen::Vector4d c = svd.matrixV().col(3);
  return c.normalized();
}

Eigen::Matrix3d FundamentalMap(const Camera& p1, const Camera& p2,
                               const Tolerances& tol) {
  RequireCamera(p1, tol);
  RequireCamera(p2, tol);
  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
  m.block<3, 4>(0, 0) = p1;
  m.block<3, 4>(3, 0) = p2;
  Eigen::Matrix3d f;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      m.col(4).setZero();
      m.col(5).setZero();
      m(a, 4) = 1.0;
      m(3 + b, 5) = 1.0;
      f(a, b) = m.determinant();
    }
  }
  return f;
}

Eigen::Matrix3d FundamentalOf(const Camera& p1, const Camera& p2,
                              const Tolerances& tol) {
  Eigen::Matrix3d f = FundamentalMap(p1, p2, tol);
  const double scale = std::pow(p1.norm(), 3) * std::pow(p2.norm(), 3);
  if (f.norm() <= tol.proj_tol * scale) {
    throw Error(ErrorCode::kCoincidentCenters, "coincident centers");
  }
  return f;
}

Verification VerifyFundamental(const Camera& p1, const Camera& p2,
                               const Eigen::Matrix3d& f,
                               const Tolerances& tol) {
  RequireCamera(p1, tol);
  RequireCamera(p2, tol);
  RequireFinite(f, "fundamental matrix");
  Verification out;
  const Eigen::Matrix4d m = (p1 / p1.norm()).transpose() * (f / f.norm()) *
                            (p2 / p2.norm());
  const double norm = m.norm();
  if (norm == 0.0 || !std::isfinite(norm)) return out;
  out.residual = (m + m.transpose()).norm() / norm;
  out.ok = out.residual <= tol.residual_tol;
  return out;
}

std::pair<Camera, Camera> CanonicalPair(const Eigen::Matrix3d& f,
                                        const Tolerances& tol) {
  const Eigen::Vector3d e = RightKernel(f, tol).vec();
  Camera p1 = Camera::Zero();
  p1.leftCols<3>().setIdentity();
  Camera p2;
  p2.leftCols<3>() = CrossMatrix(e) * (f / f.norm()).transpose();
  p2.col(3) = e;
  return {p1, p2};
}

}  // namespace fundcheck
