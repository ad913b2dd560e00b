#include "fundcheck/reconstruction.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "fundcheck/compatibility.h"
#include "fundcheck/epipolar.h"
#include "fundcheck/error.h"

namespace fundcheck {
namespace {

// Ratio sigma_{11} / sigma_1 of the extension system below which the null
// space is treated as more than one-dimensional.
constexpr double kNullGap = 1e-6;

void AppendSkewRows(const Camera& p, const Eigen::Matrix3d& f,
                    Eigen::Matrix<double, 20, 12>& a, int row0) {
  const Eigen::Matrix<double, 4, 3> b =
      (p / p.norm()).transpose() * (f / f.norm());
  int row = row0;
  for (int r = 0; r < 4; ++r) {
    for (int c = r; c < 4; ++c) {
      a.row(row).setZero();
      for (int k = 0; k < 3; ++k) {
        a(row, k * 4 + c) += b(r, k);
        a(row, k * 4 + r) += b(c, k);
      }
      ++row;
    }
  }
}

std::string PairName(int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void Finish(Reconstruction& rec, const FundamentalSet& set,
            const Tolerances& tol) {
  for (Camera& p : rec.cameras) p /= p.norm();
  rec.residual = ReconstructionResidual(set, rec.cameras, &rec.worst_edge, tol);
  if (!(rec.residual <= tol.residual_tol)) {
    std::ostringstream msg;
    msg << "reconstruction residual " << rec.residual << " on pair "
        << PairName(rec.worst_edge.first, rec.worst_edge.second);
    throw Error(ErrorCode::kReconstructionFailed, msg.str(), rec.worst_edge);
  }
}

bool Distinct(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return ProjDistance(a, b) > kCoincideTol * kAmbiguityFactor;
}

}  // namespace

Camera ExtendCamera(const Camera& p_a, const Eigen::Matrix3d& f_av,
                    const Camera& p_b, const Eigen::Matrix3d& f_bv,
                    const Tolerances& tol) {
  Eigen::Matrix<double, 20, 12> a;
  AppendSkewRows(p_a, f_av, a, 0);
  AppendSkewRows(p_b, f_bv, a, 10);
  Eigen::JacobiSVD<Eigen::Matrix<double, 20, 12>> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s[0] == 0.0 || s[10] <= kNullGap * s[0]) {
    throw Error(ErrorCode::kDegenerateConfiguration,
                "camera extension is not unique");
  }
  Camera p;
  for (int k = 0; k < 3; ++k) {
    for (int c = 0; c < 4; ++c) p(k, c) = svd.matrixV()(k * 4 + c, 11);
  }
  if (RankWithTol(p, tol.rank_tol) != 3) {
    throw Error(ErrorCode::kDegenerateConfiguration,
                "extended camera is rank deficient");
  }
  return p;
}

double ReconstructionResidual(const FundamentalSet& set,
                              const std::vector<Camera>& cameras,
                              std::pair<int, int>* worst_edge,
                              const Tolerances& tol) {
  if (static_cast<int>(cameras.size()) != set.NumViews()) {
    throw Error(ErrorCode::kInvalidInput, "camera count does not match views");
  }
  double worst = -1.0;
  std::pair<int, int> where{0, 1};
  for (const auto& [i, j] : set.Edges()) {
    const double d =
        ProjDistance(FundamentalMap(cameras[i], cameras[j], tol), set.F(i, j));
    if (d > worst) {
      worst = d;
      where = {i, j};
    }
  }
  worst = std::max(worst, 0.0);
  if (worst_edge) *worst_edge = where;
  return worst;
}

Reconstruction ReconstructComplete(const FundamentalSet& set_in,
                                   const Tolerances& tol) {
  tol.Validate();
  const int n = set_in.NumViews();
  if (n < 2 || !set_in.IsComplete()) {
    throw Error(ErrorCode::kInvalidInput,
                "reconstruction needs a complete set of at least 2 views");
  }
  const FundamentalSet set = GaugeNormalized(set_in);
  Reconstruction rec;
  if (n == 2) {
    auto [p1, p2] = CanonicalPair(set.F(0, 1), tol);
    rec.cameras = {p1, p2};
    Finish(rec, set, tol);
    return rec;
  }
  if (SolutionUniqueness(set, tol) == Uniqueness::kFamily) {
    return ReconstructCollinear(set, tol);
  }
  const EpipoleTable t = EpipoleTable::Build(set, tol);
  int anchor_a = -1, anchor_b = -1;
  for (int a = 0; a < n && anchor_a < 0; ++a) {
    for (int b = a + 1; b < n && anchor_a < 0; ++b) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        if (i == a || i == b) continue;
        ok = Distinct(t(a, b), t(a, i)) && Distinct(t(b, a), t(b, i));
      }
      if (ok) {
        anchor_a = a;
        anchor_b = b;
      }
    }
  }
  if (anchor_a < 0) {
    throw Error(ErrorCode::kReconstructionFailed,
                "no pair of views whose line avoids every other center");
  }
  auto [pa, pb] = CanonicalPair(set.F(anchor_a, anchor_b), tol);
  rec.cameras.resize(n);
  rec.cameras[anchor_a] = pa;
  rec.cameras[anchor_b] = pb;
  for (int i = 0; i < n; ++i) {
    if (i == anchor_a || i == anchor_b) continue;
    rec.cameras[i] = ExtendCamera(pa, set.F(anchor_a, i), pb,
                                  set.F(anchor_b, i), tol);
  }
  Finish(rec, set, tol);
  return rec;
}

Reconstruction ReconstructCollinear(const FundamentalSet& set_in,
                                    const Tolerances& tol,
                                    std::span<const double> offsets) {
  tol.Validate();
  const int n = set_in.NumViews();
  if (n < 2 || !set_in.IsComplete()) {
    throw Error(ErrorCode::kInvalidInput,
                "reconstruction needs a complete set of at least 2 views");
  }
  std::vector<double> gamma(offsets.begin(), offsets.end());
  if (gamma.empty()) {
    for (int i = 1; i < n; ++i) gamma.push_back(i + 1.0);
  }
  if (static_cast<int>(gamma.size()) != n - 1) {
    throw Error(ErrorCode::kInvalidInput, "need one offset per view after the first");
  }
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    if (gamma[k] == 0.0 || !std::isfinite(gamma[k]) ||
        std::count(gamma.begin(), gamma.end(), gamma[k]) > 1) {
      throw Error(ErrorCode::kInvalidInput, "offsets must be distinct and nonzero");
    }
  }
  const FundamentalSet set = GaugeNormalized(set_in);
  if (SolutionUniqueness(set, tol) != Uniqueness::kFamily) {
    throw Error(ErrorCode::kReconstructionFailed,
                "epipoles do not coincide in every image");
  }
  const FundamentalAction action = NormalizingAction(set, CaseTag::kCase4, tol);
  const FundamentalSet g = ApplyAction(set, action);

  Reconstruction rec;
  rec.uniqueness = Uniqueness::kFamily;
  rec.cameras.resize(n);
  Camera q = Camera::Zero();
  q(0, 1) = q(1, 2) = q(2, 3) = 1.0;
  rec.cameras[0] = action.h[0] * q;
  for (int i = 1; i < n; ++i) {
    const Eigen::Matrix3d m = g.F(0, i);
    q.setZero();
    q(0, 0) = gamma[i - 1];
    q(0, 1) = 1.0;
    q(1, 2) = m(1, 2);
    q(1, 3) = m(2, 2);
    q(2, 2) = -m(1, 1);
    q(2, 3) = -m(2, 1);
    rec.cameras[i] = action.h[i] * q;
  }
  Finish(rec, set, tol);
  return rec;
}

bool CentersEquivalent(const std::vector<Camera>& a,
                       const std::vector<Camera>& b, const Tolerances& tol) {
  if (a.size() != b.size()) return false;
  const int n = static_cast<int>(a.size());
  if (n == 0) return true;
  std::vector<Eigen::Vector4d> ca(n), cb(n);
  for (int i = 0; i < n; ++i) {
    ca[i] = CameraCenter(a[i], tol);
    cb[i] = CameraCenter(b[i], tol);
  }
  // (I - b b^T) H a = 0 for every center pair, unknowns H row-major.
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(std::max(4 * n, 16), 16);
  for (int i = 0; i < n; ++i) {
    const Eigen::Matrix4d proj =
        Eigen::Matrix4d::Identity() - cb[i] * cb[i].transpose();
    for (int r = 0; r < 4; ++r) {
      for (int s = 0; s < 4; ++s) {
        for (int c = 0; c < 4; ++c) sys(4 * i + r, s * 4 + c) = proj(r, s) * ca[i][c];
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int k = 0; k < s.size(); ++k) {
    if (s[k] > tol.rank_tol * std::max(s[0], 1.0)) ++rank;
  }
  if (rank == 16) return false;
  const Eigen::MatrixXd basis = svd.matrixV().rightCols(16 - rank);
  std::mt19937_64 rng(20240917);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::VectorXd w(basis.cols());
    for (int k = 0; k < w.size(); ++k) w[k] = normal(rng);
    const Eigen::VectorXd h = basis * w;
    Eigen::Matrix4d hm;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) hm(r, c) = h[r * 4 + c];
    if (RankWithTol(hm, tol.rank_tol) != 4) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      ok = ProjDistance(hm * ca[i], cb[i]) <= tol.proj_tol;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace fundcheck
