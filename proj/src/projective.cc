#include "fundcheck/projective.h"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "fundcheck/error.h"
#include "fundcheck/types.h"

namespace fundcheck {

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kRankError: return "RankError";
    case ErrorCode::kInvalidCamera: return "InvalidCamera";
    case ErrorCode::kCoincidentCenters: return "CoincidentCenters";
    case ErrorCode::kGraphError: return "GraphError";
    case ErrorCode::kDegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::kScaleRecoveryError: return "ScaleRecoveryError";
    case ErrorCode::kCycleConditionViolated: return "CycleConditionViolated";
    case ErrorCode::kReconstructionFailed: return "ReconstructionFailed";
  }
  return "Unknown";
}

std::string ToString(Verdict v) {
  switch (v) {
    case Verdict::kCompatible: return "compatible";
    case Verdict::kIncompatible: return "incompatible";
    case Verdict::kUndetermined: return "undetermined";
  }
  return "unknown";
}

std::string ToString(CaseTag c) {
  switch (c) {
    case CaseTag::kCase1: return "Case1";
    case CaseTag::kCase2: return "Case2";
    case CaseTag::kCase3: return "Case3";
    case CaseTag::kCase4: return "Case4";
    case CaseTag::kTripleNonCollinear: return "TripleNonCollinear";
    case CaseTag::kTripleCollinear: return "TripleCollinear";
    case CaseTag::kInconsistent: return "Inconsistent";
    case CaseTag::kMixed: return "Mixed";
    case CaseTag::kAmbiguous: return "Ambiguous";
  }
  return "unknown";
}

std::string ToString(Uniqueness u) {
  return u == Uniqueness::kUnique ? "unique" : "family";
}

void Tolerances::Validate() const {
  for (double t : {rank_tol, residual_tol, proj_tol}) {
    if (!std::isfinite(t) || t <= 0.0) {
      throw Error(ErrorCode::kInvalidInput,
                  "tolerances must be finite and positive");
    }
  }
}

void RequireFinite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(what) + " contains non-finite entries");
  }
}

ProjVector3::ProjVector3(const Eigen::Vector3d& raw) {
  RequireFinite(raw, "projective vector");
  const double norm = raw.norm();
  if (norm == 0.0) {
    throw Error(ErrorCode::kInvalidInput, "zero vector is not a projective point");
  }
  v_ = raw / norm;
  // Coordinates below this are treated as rounding noise for the sign choice.
  constexpr double kSignFloor = 1e-12;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v_[i]) > kSignFloor) {
      if (v_[i] < 0) v_ = -v_;
      break;
    }
  }
}

int RankWithTol(const Eigen::MatrixXd& m, double rank_tol) {
  RequireFinite(m, "matrix");
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > rank_tol * s[0]) ++rank;
  }
  return rank;
}

double ProjDistance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kInvalidInput, "shape mismatch in ProjDistance");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  const double cos = std::abs((a.array() * b.array()).sum()) / (na * nb);
  return std::max(0.0, 1.0 - cos);
}

namespace {

// Kernel of a rank-2 3x3 matrix as the largest cross product of two rows.
// Exact on integer input, which keeps hand-built fixtures free of noise.
Eigen::Vector3d RowCrossKernel(const Eigen::Matrix3d& f) {
  Eigen::Vector3d best = Eigen::Vector3d::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      Eigen::Vector3d c = f.row(a).transpose().cross(f.row(b).transpose());
      if (c.norm() > best.norm()) best = c;
    }
  }
  return best;
}

void RequireRankTwo(const Eigen::Matrix3d& f, const Tolerances& tol) {
  const int rank = RankWithTol(f, tol.rank_tol);
  if (rank != 2) {
    throw Error(ErrorCode::kRankError,
                "expected a rank-2 matrix, got rank " + std::to_string(rank));
  }
}

}  // namespace

ProjVector3 RightKernel(const Eigen::Matrix3d& f, const Tolerances& tol) {
  RequireRankTwo(f, tol);
  return ProjVector3(RowCrossKernel(f));
}

ProjVector3 LeftKernel(const Eigen::Matrix3d& f, const Tolerances& tol) {
  return RightKernel(f.transpose(), tol);
}

Eigen::Matrix3d CrossMatrix(const Eigen::Vector3d& t) {
  Eigen::Matrix3d m;
  m << 0, -t.z(), t.y(),
       t.z(), 0, -t.x(),
       -t.y(), t.x(), 0;
  return m;
}

Eigen::Vector3d CrossVector(const Eigen::Matrix3d& m) {
  return 0.5 * Eigen::Vector3d(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0),
                               m(1, 0) - m(0, 1));
}

}  // namespace fundcheck
