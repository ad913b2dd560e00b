#include "fundcheck/nview.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "fundcheck/compatibility.h"
#include "fundcheck/epipolar.h"
#include "fundcheck/error.h"
#include "fundcheck/reconstruction.h"

namespace fundcheck {

std::string ToString(NViewMode mode) {
  switch (mode) {
    case NViewMode::kAuto: return "auto";
    case NViewMode::kNonCollinear: return "noncollinear";
    case NViewMode::kCollinear: return "collinear";
  }
  return "unknown";
}

NViewMatrix Assemble(const FundamentalSet& set, const Eigen::MatrixXd& scales) {
  const int n = set.NumViews();
  if (!set.IsComplete()) {
    throw Error(ErrorCode::kInvalidInput, "n-view matrix needs a complete set");
  }
  if (scales.rows() != n || scales.cols() != n) {
    throw Error(ErrorCode::kInvalidInput, "scale matrix has the wrong size");
  }
  RequireFinite(scales, "scale matrix");
  NViewMatrix nv;
  nv.n = n;
  nv.m = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (scales(i, j) != scales(j, i) || scales(i, j) == 0.0) {
        throw Error(ErrorCode::kInvalidInput,
                    "scales must be symmetric and nonzero");
      }
      nv.m.block<3, 3>(3 * i, 3 * j) = scales(i, j) * set.F(i, j);
    }
  }
  return nv;
}

Eigen::MatrixXd RecoverScales(const FundamentalSet& set, const Tolerances& tol) {
  Reconstruction rec;
  try {
    rec = ReconstructComplete(set, tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::kScaleRecoveryError,
                std::string("cannot recover scales: ") + e.what(), e.edge());
  }
  const int n = set.NumViews();
  Eigen::MatrixXd scales = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::Matrix3d f = set.F(i, j);
      const Eigen::Matrix3d psi = FundamentalMap(rec.cameras[i], rec.cameras[j], tol);
      const double s = (psi.array() * f.array()).sum() / f.squaredNorm();
      scales(i, j) = scales(j, i) = s;
    }
  }
  if (n >= 2 && scales(0, 1) < 0) scales = -scales;
  return scales;
}

NViewMode ResolveMode(const FundamentalSet& set, NViewMode requested,
                      const Tolerances& tol) {
  if (requested != NViewMode::kAuto) return requested;
  return SolutionUniqueness(set, tol) == Uniqueness::kFamily
             ? NViewMode::kCollinear
             : NViewMode::kNonCollinear;
}

namespace {

NViewDiagnostics Measure(const NViewMatrix& nv, NViewMode mode,
                         const Tolerances& tol, bool use_signature) {
  if (mode == NViewMode::kAuto) {
    throw Error(ErrorCode::kInvalidInput, "resolve the mode before testing");
  }
  NViewDiagnostics d;
  d.mode = mode;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(nv.m);
  const Eigen::VectorXd ev = eig.eigenvalues();
  d.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  const double top = ev.cwiseAbs().maxCoeff();
  d.smallest_kept = INFINITY;
  for (double v : d.eigenvalues) {
    const double rel = top > 0 ? std::abs(v) / top : 0.0;
    if (rel > tol.rank_tol) {
      (v > 0 ? d.positive : d.negative) += 1;
      d.smallest_kept = std::min(d.smallest_kept, rel);
    } else {
      d.largest_dropped = std::max(d.largest_dropped, rel);
    }
  }
  d.rank = RankWithTol(nv.m, tol.rank_tol);
  for (int i = 0; i < nv.n; ++i) {
    d.block_row_ranks.push_back(
        RankWithTol(nv.m.middleRows(3 * i, 3), tol.rank_tol));
  }
  const int half = mode == NViewMode::kCollinear ? 2 : 3;
  const int block = mode == NViewMode::kCollinear ? 2 : 3;
  d.consistent = d.rank == 2 * half &&
                 std::all_of(d.block_row_ranks.begin(), d.block_row_ranks.end(),
                             [block](int r) { return r == block; });
  if (use_signature) {
    d.consistent = d.consistent && d.positive == half && d.negative == half;
  }
  return d;
}

}  // namespace

NViewDiagnostics KggTest(const NViewMatrix& nv, NViewMode mode,
                         const Tolerances& tol) {
  return Measure(nv, mode, tol, true);
}

RankOnlyResult RankOnlyTest(const NViewMatrix& nv, const FundamentalSet& set,
                            NViewMode mode, const Tolerances& tol) {
  RankOnlyResult out;
  out.diagnostics = Measure(nv, mode, tol, false);
  if (mode == NViewMode::kNonCollinear) {
    const EpipoleTable t = EpipoleTable::Build(set, tol);
    const int n = set.NumViews();
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c) {
            if (a == i || b == i || c == i) continue;
            Eigen::Matrix3d m;
            m << t(i, a), t(i, b), t(i, c);
            if (std::abs(m.determinant()) <= kCoincideTol * kAmbiguityFactor) {
              out.verdict = Verdict::kUndetermined;
              out.note = "three collinear epipoles in image " +
                         std::to_string(i + 1);
              return out;
            }
          }
    }
  }
  out.verdict = out.diagnostics.consistent ? Verdict::kCompatible
                                           : Verdict::kIncompatible;
  return out;
}

ScaleSearch ScaleGridSearch(const FundamentalSet& set,
                            std::span<const double> grid, NViewMode mode,
                            const Tolerances& tol) {
  if (grid.empty()) throw Error(ErrorCode::kInvalidInput, "empty scale grid");
  const int n = set.NumViews();
  const int block = mode == NViewMode::kCollinear ? 2 : 3;
  std::vector<std::pair<int, int>> free;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(i == 0 && j == 1)) free.push_back({i, j});
  ScaleSearch out;
  out.min_rank = 3 * n + 1;
  std::vector<std::size_t> idx(free.size(), 0);
  Eigen::MatrixXd scales = Eigen::MatrixXd::Ones(n, n);
  while (true) {
    for (std::size_t k = 0; k < free.size(); ++k) {
      const auto [i, j] = free[k];
      scales(i, j) = scales(j, i) = grid[idx[k]];
    }
    const NViewMatrix nv = Assemble(set, scales);
    ++out.evaluated;
    bool blocks_ok = true;
    for (int i = 0; i < n && blocks_ok; ++i) {
      blocks_ok = RankWithTol(nv.m.middleRows(3 * i, 3), tol.rank_tol) == block;
    }
    if (blocks_ok) {
      const int r = RankWithTol(nv.m, tol.rank_tol);
      if (r < out.min_rank) {
        out.min_rank = r;
        out.best_scales = scales;
      }
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == grid.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace fundcheck
