#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fundcheck/fundamental.h"

namespace fundcheck {

// Matrices F^{ij} indexed by unordered view pairs (0-based). Stored once per
// pair with i < j; F(j, i) returns the transpose.
class FundamentalSet {
 public:
  FundamentalSet() = default;
  explicit FundamentalSet(int num_views);

  int NumViews() const { return n_; }
  std::size_t NumEdges() const { return mats_.size(); }

  // Stores f as F^{ij}. Throws InvalidInput on bad indices, a diagonal pair,
  // or non-finite entries.
  void Set(int i, int j, const Eigen::Matrix3d& f);
  bool HasEdge(int i, int j) const;
  // Throws GraphError if the pair is absent.
  Eigen::Matrix3d F(int i, int j) const;

  std::vector<std::pair<int, int>> Edges() const;
  bool IsComplete() const;

  // Views relabeled so that views[k] becomes view k.
  FundamentalSet Subset(std::span<const int> views) const;

 private:
  void CheckIndex(int i) const;

  int n_ = 0;
  std::map<std::pair<int, int>, Eigen::Matrix3d> mats_;
};

// Every F^{ij} rescaled to unit Frobenius norm.
FundamentalSet GaugeNormalized(const FundamentalSet& set);

// psi(P_i, P_j) for all i < j. Throws CoincidentCenters naming the pair.
FundamentalSet ComputeFundamentalSet(const std::vector<Camera>& cameras,
                                     const Tolerances& tol = {});

}  // namespace fundcheck
