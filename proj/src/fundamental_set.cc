#include "fundcheck/fundamental_set.h"

#include <string>

#include "fundcheck/error.h"

namespace fundcheck {

FundamentalSet::FundamentalSet(int num_views) : n_(num_views) {
  if (num_views < 0) {
    throw Error(ErrorCode::kInvalidInput, "negative number of views");
  }
}

void FundamentalSet::CheckIndex(int i) const {
  if (i < 0 || i >= n_) {
    throw Error(ErrorCode::kInvalidInput,
                "view index " + std::to_string(i + 1) + " out of range");
  }
}

void FundamentalSet::Set(int i, int j, const Eigen::Matrix3d& f) {
  CheckIndex(i);
  CheckIndex(j);
  if (i == j) {
    throw Error(ErrorCode::kInvalidInput, "diagonal pair has no matrix");
  }
  RequireFinite(f, "fundamental matrix");
  if (i < j) {
    mats_[{i, j}] = f;
  } else {
    mats_[{j, i}] = f.transpose();
  }
}

bool FundamentalSet::HasEdge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return mats_.count({i, j}) > 0;
}

Eigen::Matrix3d FundamentalSet::F(int i, int j) const {
  const bool swapped = i > j;
  auto it = mats_.find(swapped ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == mats_.end()) {
    throw Error(ErrorCode::kGraphError,
                "no matrix for pair (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")",
                std::make_pair(std::min(i, j), std::max(i, j)));
  }
  return swapped ? Eigen::Matrix3d(it->second.transpose()) : it->second;
}

std::vector<std::pair<int, int>> FundamentalSet::Edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(mats_.size());
  for (const auto& [key, f] : mats_) out.push_back(key);
  return out;
}

bool FundamentalSet::IsComplete() const {
  return mats_.size() == static_cast<std::size_t>(n_) * (n_ - 1) / 2;
}

FundamentalSet FundamentalSet::Subset(std::span<const int> views) const {
  FundamentalSet out(static_cast<int>(views.size()));
  for (std::size_t a = 0; a < views.size(); ++a) {
    for (std::size_t b = a + 1; b < views.size(); ++b) {
      if (HasEdge(views[a], views[b])) {
        out.Set(static_cast<int>(a), static_cast<int>(b),
                F(views[a], views[b]));
      }
    }
  }
  return out;
}

FundamentalSet GaugeNormalized(const FundamentalSet& set) {
  FundamentalSet out(set.NumViews());
  for (const auto& [i, j] : set.Edges()) {
    const Eigen::Matrix3d f = set.F(i, j);
    const double norm = f.norm();
    if (norm == 0.0) {
      throw Error(ErrorCode::kRankError, "zero fundamental matrix",
                  std::make_pair(i, j));
    }
    out.Set(i, j, f / norm);
  }
  return out;
}

FundamentalSet ComputeFundamentalSet(const std::vector<Camera>& cameras,
                                     const Tolerances& tol) {
  const int n = static_cast<int>(cameras.size());
  FundamentalSet out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      try {
        out.Set(i, j, FundamentalOf(cameras[i], cameras[j], tol));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kCoincidentCenters) throw;
        throw Error(ErrorCode::kCoincidentCenters,
                    "coincident centers (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ")",
                    std::make_pair(i, j));
      }
    }
  }
  return out;
}

}  // namespace fundcheck
