#include "fundcheck/epipolar.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "fundcheck/error.h"

namespace fundcheck {

std::pair<ProjVector3, ProjVector3> Epipoles(const Eigen::Matrix3d& f,
                                            const Tolerances& tol) {
  return {LeftKernel(f, tol), RightKernel(f, tol)};
}

EpipoleTable EpipoleTable::Build(const FundamentalSet& set,
                                 const Tolerances& tol) {
  EpipoleTable table;
  table.n_ = set.NumViews();
  for (const auto& [i, j] : set.Edges()) {
    try {
      auto [e_in_i, e_in_j] = Epipoles(set.F(i, j), tol);
      table.e_[{i, j}] = e_in_i.vec();
      table.e_[{j, i}] = e_in_j.vec();
    } catch (const Error& e) {
      throw Error(e.code(),
                  std::string(e.what()) + " for pair (" +
                      std::to_string(i + 1) + "," + std::to_string(j + 1) +
                      ")",
                  std::make_pair(i, j));
    }
  }
  return table;
}

const Eigen::Vector3d& EpipoleTable::operator()(int image, int other) const {
  auto it = e_.find({image, other});
  if (it == e_.end()) {
    throw Error(ErrorCode::kGraphError,
                "no epipole of view " + std::to_string(other + 1) +
                    " in image " + std::to_string(image + 1));
  }
  return it->second;
}

void EpipoleTable::Set(int image, int other, const Eigen::Vector3d& e) {
  e_[{image, other}] = e;
}

double EpipolarNumber(const FundamentalSet& set, const EpipoleTable& table,
                      int s, int i, int j, int t) {
  return table(i, s).dot(set.F(i, j) * table(j, t));
}

FundamentalSet ApplyAction(const FundamentalSet& set,
                           const FundamentalAction& action) {
  if (static_cast<int>(action.h.size()) != set.NumViews()) {
    throw Error(ErrorCode::kInvalidInput, "action size does not match views");
  }
  FundamentalSet out(set.NumViews());
  for (const auto& [i, j] : set.Edges()) {
    out.Set(i, j, action.h[i].transpose() * set.F(i, j) * action.h[j]);
  }
  return out;
}

Eigen::Vector2d CollinearSplit(const Eigen::Vector3d& e_j,
                               const Eigen::Vector3d& e_k,
                               const Eigen::Vector3d& e_l) {
  Eigen::Matrix<double, 3, 2> a;
  a << e_j, e_k;
  return a.colPivHouseholderQr().solve(e_l);
}

namespace {

// The three views other than `view` in a quadruple, ascending.
std::array<int, 3> Others(int view) {
  std::array<int, 3> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v) {
    if (v != view) out[k++] = v;
  }
  return out;
}

Eigen::Matrix3d Columns(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                        const Eigen::Vector3d& c) {
  Eigen::Matrix3d m;
  m << a, b, c;
  return m;
}

// Orthonormal u, v with (e, u, v) a basis.
std::pair<Eigen::Vector3d, Eigen::Vector3d> Complete(const Eigen::Vector3d& e) {
  Eigen::Index axis = 0;
  e.cwiseAbs().minCoeff(&axis);
  const Eigen::Vector3d u = e.cross(Eigen::Vector3d::Unit(axis)).normalized();
  const Eigen::Vector3d v = e.normalized().cross(u);
  return {u, v};
}

void RequireInvertible(const Eigen::Matrix3d& h, int view,
                       const Tolerances& tol) {
  if (RankWithTol(h, tol.rank_tol) != 3) {
    throw Error(ErrorCode::kDegenerateConfiguration,
                "normalizing basis of view " + std::to_string(view + 1) +
                    " is singular");
  }
}

}  // namespace

void RescaleForSum(EpipoleTable& table, int image, double floor) {
  const auto [j, k, l] = Others(image);
  const Eigen::Vector2d ab =
      CollinearSplit(table(image, j), table(image, k), table(image, l));
  if (std::abs(ab[0]) <= floor || std::abs(ab[1]) <= floor) {
    throw Error(ErrorCode::kDegenerateConfiguration,
                "epipoles in image " + std::to_string(image + 1) +
                    " do not split into two distinct ones");
  }
  table.Set(image, j, ab[0] * table(image, j));
  table.Set(image, k, ab[1] * table(image, k));
}

FundamentalAction NormalizingAction(const FundamentalSet& set, CaseTag c,
                                    const Tolerances& tol) {
  const int n = set.NumViews();
  FundamentalAction action;
  action.h.resize(n);
  if (c == CaseTag::kCase4) {
    const EpipoleTable table = EpipoleTable::Build(set, tol);
    for (int i = 0; i < n; ++i) {
      const int other = i == 0 ? 1 : 0;
      const Eigen::Vector3d e = table(i, other);
      const auto [u, v] = Complete(e);
      action.h[i] = Columns(e, u, v);
    }
    return action;
  }
  if (n != 4) {
    throw Error(ErrorCode::kInvalidInput,
                "normal forms for Case1-3 need exactly four views");
  }
  EpipoleTable table = EpipoleTable::Build(set, tol);
  switch (c) {
    case CaseTag::kCase1:
      for (int i = 0; i < 4; ++i) {
        const auto [j, k, l] = Others(i);
        action.h[i] = Columns(table(i, j), table(i, k), table(i, l));
      }
      break;
    case CaseTag::kCase2:
      for (int i = 0; i < 4; ++i) RescaleForSum(table, i, tol.residual_tol);
      for (int i = 0; i < 4; ++i) {
        const auto [j, k, l] = Others(i);
        const Eigen::Vector3d x = set.F(i, j) * table(j, l);
        action.h[i] = Columns(table(i, j), table(i, k), x);
      }
      break;
    case CaseTag::kCase3: {
      RescaleForSum(table, 3, tol.residual_tol);
      for (int i = 0; i < 3; ++i) {
        const auto [j, k, l] = Others(i);
        const Eigen::Vector3d x = set.F(i, j) * table(j, l);
        action.h[i] = Columns(table(i, j), table(i, l), x);
      }
      const Eigen::Vector3d e1 = table(3, 0);
      const Eigen::Vector3d e2 = table(3, 1);
      action.h[3] = Columns(e1, e2, e1.cross(e2));
      break;
    }
    default:
      throw Error(ErrorCode::kInvalidInput,
                  "no normal form for " + ToString(c));
  }
  for (int i = 0; i < 4; ++i) RequireInvertible(action.h[i], i, tol);
  return action;
}

namespace {

struct Pattern {
  std::vector<std::pair<int, int>> zeros;
  // Entry pairs whose sum vanishes.
  std::vector<std::array<int, 4>> sums;
};

Pattern ZeroRowCol(std::vector<std::pair<int, int>> extra = {}) {
  Pattern p;
  for (int k = 0; k < 3; ++k) {
    p.zeros.push_back({0, k});
    if (k > 0) p.zeros.push_back({k, 0});
  }
  p.zeros.insert(p.zeros.end(), extra.begin(), extra.end());
  return p;
}

Pattern Keep(std::vector<std::pair<int, int>> nonzero) {
  Pattern p;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (std::find(nonzero.begin(), nonzero.end(), std::make_pair(r, c)) ==
          nonzero.end()) {
        p.zeros.push_back({r, c});
      }
    }
  }
  return p;
}

Pattern PatternFor(CaseTag c, int i, int j) {
  const int edge = i * 4 + j;
  constexpr int k12 = 1, k13 = 2, k14 = 3, k23 = 6, k24 = 7, k34 = 11;
  switch (c) {
    case CaseTag::kCase1:
      switch (edge) {
        case k12: return Keep({{1, 2}, {2, 1}});
        case k13: return Keep({{0, 2}, {2, 1}});
        case k14: return Keep({{0, 2}, {1, 1}});
        case k23: return Keep({{0, 2}, {2, 0}});
        case k24: return Keep({{0, 2}, {1, 0}});
        case k34: return Keep({{0, 1}, {1, 0}});
      }
      break;
    case CaseTag::kCase2:
      switch (edge) {
        case k12: return Keep({{1, 2}, {2, 1}, {2, 2}});
        case k13: return Keep({{0, 2}, {2, 1}, {2, 2}});
        case k23: return Keep({{0, 2}, {2, 0}, {2, 2}});
        case k14: {
          Pattern p = Keep({{0, 2}, {1, 2}, {2, 1}, {2, 2}});
          p.sums.push_back({0, 2, 1, 2});
          return p;
        }
        case k24: {
          Pattern p = Keep({{0, 2}, {1, 2}, {2, 0}, {2, 2}});
          p.sums.push_back({0, 2, 1, 2});
          return p;
        }
        case k34: {
          Pattern p = Keep({{0, 2}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
          p.sums.push_back({0, 2, 1, 2});
          p.sums.push_back({2, 0, 2, 1});
          return p;
        }
      }
      break;
    case CaseTag::kCase3:
      switch (edge) {
        case k12:
        case k13:
        case k23: return Keep({{1, 2}, {2, 1}, {2, 2}});
        case k14: return Keep({{0, 2}, {2, 1}, {2, 2}});
        case k24: return Keep({{0, 2}, {2, 0}, {2, 2}});
        case k34: {
          Pattern p = Keep({{0, 2}, {2, 0}, {2, 1}, {2, 2}});
          p.sums.push_back({2, 0, 2, 1});
          return p;
        }
      }
      break;
    case CaseTag::kCase4:
      return ZeroRowCol();
    default:
      break;
  }
  throw Error(ErrorCode::kInvalidInput, "no zero pattern for " + ToString(c));
}

}  // namespace

double PatternResidual(const FundamentalSet& normalized, CaseTag c) {
  double worst = 0.0;
  for (const auto& [i, j] : normalized.Edges()) {
    const Eigen::Matrix3d g = normalized.F(i, j);
    const double norm = g.norm();
    if (norm == 0.0) return 1.0;
    const Pattern p = PatternFor(c, i, j);
    for (const auto& [r, col] : p.zeros) {
      worst = std::max(worst, std::abs(g(r, col)) / norm);
    }
    for (const auto& s : p.sums) {
      worst = std::max(worst, std::abs(g(s[0], s[1]) + g(s[2], s[3])) / norm);
    }
  }
  return worst;
}

}  // namespace fundcheck
