#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fundcheck/fundamental_set.h"
#include "fundcheck/projective.h"
#include "fundcheck/types.h"

namespace fundcheck {

// Symmetric 3n x 3n matrix with blocks scale(i,j) * F^{ij} and zero
// diagonal blocks.
struct NViewMatrix {
  int n = 0;
  Eigen::MatrixXd m;
};

// `scales` is n x n, symmetric, with nonzero off-diagonal entries.
// Throws InvalidInput otherwise.
NViewMatrix Assemble(const FundamentalSet& set, const Eigen::MatrixXd& scales);

// Scales that make the n-view matrix consistent, recovered from a
// reconstruction: scale(i,j) is the projection of psi(P_i, P_j) onto F^{ij},
// sign-normalized so scale(0,1) > 0. Throws ScaleRecoveryError when the set
// cannot be reconstructed.
Eigen::MatrixXd RecoverScales(const FundamentalSet& set,
                              const Tolerances& tol = {});

enum class NViewMode { kAuto, kNonCollinear, kCollinear };

std::string ToString(NViewMode mode);

// kCollinear iff every image has a single epipole.
NViewMode ResolveMode(const FundamentalSet& set, NViewMode requested,
                      const Tolerances& tol = {});

struct NViewDiagnostics {
  NViewMode mode = NViewMode::kNonCollinear;
  int rank = 0;
  int positive = 0;
  int negative = 0;
  std::vector<int> block_row_ranks;
  std::vector<double> eigenvalues;  // ascending
  // Smallest retained and largest discarded |eigenvalue|, relative to the
  // largest.
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
  bool consistent = false;
};

// Rank 6 with signature (3,3) and rank-3 block rows (non-collinear), or rank
// 4, (2,2) and rank-2 block rows (collinear).
NViewDiagnostics KggTest(const NViewMatrix& nv, NViewMode mode,
                         const Tolerances& tol = {});

struct RankOnlyResult {
  Verdict verdict = Verdict::kUndetermined;
  NViewDiagnostics diagnostics;
  std::string note;
};

// The same test without the signature. Valid in non-collinear mode only when
// no three epipoles in any image are collinear; otherwise Undetermined.
RankOnlyResult RankOnlyTest(const NViewMatrix& nv, const FundamentalSet& set,
                            NViewMode mode, const Tolerances& tol = {});

struct ScaleSearch {
  int min_rank = 0;
  Eigen::MatrixXd best_scales;
  std::size_t evaluated = 0;
};

// Lowest rank of the n-view matrix over all scalings with scale(0,1) = 1 and
// every other scale drawn from `grid`, among those with full-rank block rows.
ScaleSearch ScaleGridSearch(const FundamentalSet& set,
                            std::span<const double> grid,
                            NViewMode mode, const Tolerances& tol = {});

}  // namespace fundcheck
