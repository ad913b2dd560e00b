#include "fundcheck/cycle.h"

#include <algorithm>
#include <deque>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "fundcheck/epipolar.h"
#include "fundcheck/error.h"
#include "fundcheck/reconstruction.h"

namespace fundcheck {

ViewingGraph::ViewingGraph(int num_vertices,
                           std::vector<std::pair<int, int>> edges)
    : n_(num_vertices), adj_(std::max(num_vertices, 0)) {
  if (num_vertices < 0) throw Error(ErrorCode::kGraphError, "negative vertex count");
  for (auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
      throw Error(ErrorCode::kGraphError, "edge endpoint out of range");
    }
    if (i == j) throw Error(ErrorCode::kGraphError, "self-loop in viewing graph");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error(ErrorCode::kGraphError, "duplicate edge in viewing graph");
  }
  edges_ = std::move(edges);
  for (const auto& [i, j] : edges_) {
    adj_[i].push_back(j);
    adj_[j].push_back(i);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

ViewingGraph ViewingGraph::Complete(int num_vertices) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < num_vertices; ++i)
    for (int j = i + 1; j < num_vertices; ++j) edges.push_back({i, j});
  return ViewingGraph(num_vertices, std::move(edges));
}

bool ViewingGraph::HasEdge(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return false;
  return std::binary_search(adj_[i].begin(), adj_[i].end(), j);
}

std::vector<std::vector<int>> ViewingGraph::Components() const {
  std::vector<int> seen(n_, 0);
  std::vector<std::vector<int>> out;
  for (int root = 0; root < n_; ++root) {
    if (seen[root]) continue;
    std::vector<int> comp;
    std::deque<int> queue = {root};
    seen[root] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      comp.push_back(u);
      for (int v : adj_[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

void SkewEdgeData::Set(int i, int j, const Eigen::Vector3d& g) {
  RequireFinite(g, "edge vector");
  if (i == j) throw Error(ErrorCode::kInvalidInput, "diagonal edge vector");
  if (g.norm() == 0.0) {
    throw Error(ErrorCode::kInvalidInput, "zero edge vector gives no rank-2 matrix");
  }
  if (i < j) {
    g_[{i, j}] = g;
  } else {
    g_[{j, i}] = -g;
  }
}

bool SkewEdgeData::Has(int i, int j) const {
  return g_.count({std::min(i, j), std::max(i, j)}) > 0;
}

Eigen::Vector3d SkewEdgeData::G(int i, int j) const {
  auto it = g_.find({std::min(i, j), std::max(i, j)});
  if (it == g_.end()) {
    throw Error(ErrorCode::kGraphError,
                "no edge vector for (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")");
  }
  return i < j ? it->second : Eigen::Vector3d(-it->second);
}

SkewEdgeData SkewDataFromSet(const FundamentalSet& set, const ViewingGraph& graph,
                             const Tolerances& tol) {
  SkewEdgeData data;
  for (const auto& [i, j] : graph.Edges()) {
    const Eigen::Matrix3d f = set.F(i, j);
    const double norm = f.norm();
    if (norm == 0.0 || (f + f.transpose()).norm() > tol.residual_tol * norm) {
      throw Error(ErrorCode::kInvalidInput,
                  "matrix for (" + std::to_string(i + 1) + "," +
                      std::to_string(j + 1) + ") is not skew-symmetric",
                  std::make_pair(i, j));
    }
    data.Set(i, j, CrossVector(f));
  }
  return data;
}

namespace {

struct Tree {
  std::vector<Eigen::Vector3d> t;
  std::vector<int> parent;
};

Tree SpanningSums(const ViewingGraph& graph, const SkewEdgeData& data) {
  const int n = graph.NumVertices();
  Tree tree{std::vector<Eigen::Vector3d>(n, Eigen::Vector3d::Zero()),
            std::vector<int>(n, -2)};
  for (const auto& comp : graph.Components()) {
    const int root = comp.front();
    tree.parent[root] = -1;
    std::deque<int> queue = {root};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : graph.Neighbors(u)) {
        if (tree.parent[v] != -2) continue;
        tree.parent[v] = u;
        tree.t[v] = tree.t[u] + data.G(u, v);
        queue.push_back(v);
      }
    }
  }
  return tree;
}

}  // namespace

CycleResidual CycleResiduals(const ViewingGraph& graph, const SkewEdgeData& data) {
  if (graph.NumVertices() == 0) {
    throw Error(ErrorCode::kInvalidInput, "empty viewing graph");
  }
  const Tree tree = SpanningSums(graph, data);
  double scale = 0.0;
  for (const auto& [i, j] : graph.Edges()) scale = std::max(scale, data.G(i, j).norm());
  CycleResidual out;
  for (const auto& [i, j] : graph.Edges()) {
    if (tree.parent[j] == i || tree.parent[i] == j) continue;
    const double r = (tree.t[j] - tree.t[i] - data.G(i, j)).norm() / scale;
    if (r > out.max_residual || out.worst_chord.first < 0) {
      out.max_residual = std::max(out.max_residual, r);
      out.worst_chord = {i, j};
    }
  }
  return out;
}

std::vector<Camera> CamerasFromCycleSolution(const ViewingGraph& graph,
                                             const SkewEdgeData& data,
                                             const Tolerances& tol) {
  if (!graph.IsConnected()) {
    throw Error(ErrorCode::kInvalidInput, "viewing graph is not connected");
  }
  const CycleResidual res = CycleResiduals(graph, data);
  if (!(res.max_residual <= tol.residual_tol)) {
    throw Error(ErrorCode::kCycleConditionViolated,
                "cycle through (" + std::to_string(res.worst_chord.first + 1) +
                    "," + std::to_string(res.worst_chord.second + 1) +
                    ") does not close",
                res.worst_chord);
  }
  const Tree tree = SpanningSums(graph, data);
  std::vector<Camera> cams(graph.NumVertices());
  for (int v = 0; v < graph.NumVertices(); ++v) {
    cams[v].leftCols<3>().setIdentity();
    cams[v].col(3) = tree.t[v];
  }
  return cams;
}

namespace {

bool Distinct(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return ProjDistance(a, b) > kCoincideTol * kAmbiguityFactor;
}

// A pendant view's camera, placed so that (p_u, result) realizes f_uv.
Camera AttachPendant(const Camera& p_u, const Eigen::Matrix3d& f_uv,
                     const Tolerances& tol) {
  Eigen::Matrix4d h;
  h.topRows<3>() = p_u;
  h.row(3) = CameraCenter(p_u, tol).transpose();
  return CanonicalPair(f_uv, tol).second * h;
}

struct Growth {
  std::vector<std::optional<Camera>> cams;
  std::size_t placed = 0;
};

Growth GrowFromSeed(const FundamentalSet& set, const ViewingGraph& graph,
                    const EpipoleTable& t, const std::vector<int>& comp,
                    int a, int b, const Tolerances& tol) {
  Growth g;
  g.cams.resize(graph.NumVertices());
  auto [pa, pb] = CanonicalPair(set.F(a, b), tol);
  g.cams[a] = pa;
  g.cams[b] = pb;
  g.placed = 2;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int v : comp) {
      if (g.cams[v]) continue;
      std::vector<int> known;
      for (int u : graph.Neighbors(v)) {
        if (g.cams[u]) known.push_back(u);
      }
      if (known.size() == 1 && graph.Neighbors(v).size() == 1) {
        const int u = known[0];
        g.cams[v] = AttachPendant(*g.cams[u], set.F(u, v), tol);
      }
      for (std::size_t x = 0; x < known.size() && !g.cams[v]; ++x) {
        for (std::size_t y = x + 1; y < known.size() && !g.cams[v]; ++y) {
          const int u = known[x], w = known[y];
          if (!Distinct(t(v, u), t(v, w))) continue;
          try {
            g.cams[v] = ExtendCamera(*g.cams[u], set.F(u, v), *g.cams[w],
                                     set.F(w, v), tol);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kDegenerateConfiguration) throw;
          }
        }
      }
      if (g.cams[v]) {
        ++g.placed;
        progress = true;
      }
    }
  }
  return g;
}

}  // namespace

CompatReport CheckGeneralGraph(const FundamentalSet& set_in,
                               const ViewingGraph& graph, const Tolerances& tol) {
  tol.Validate();
  if (set_in.NumViews() != graph.NumVertices()) {
    throw Error(ErrorCode::kGraphError, "graph and set disagree on view count");
  }
  FundamentalSet set(graph.NumVertices());
  for (const auto& [i, j] : graph.Edges()) {
    const Eigen::Matrix3d f = set_in.F(i, j);
    if (f.norm() == 0.0) {
      throw Error(ErrorCode::kRankError, "zero fundamental matrix", std::make_pair(i, j));
    }
    set.Set(i, j, f / f.norm());
  }
  const EpipoleTable t = EpipoleTable::Build(set, tol);

  CompatReport report;
  report.tol = tol;
  report.case_tag = CaseTag::kMixed;
  report.verdict = Verdict::kCompatible;
  for (const auto& comp : graph.Components()) {
    if (comp.size() < 2) continue;
    std::optional<Growth> best;
    for (const auto& [a, b] : graph.Edges()) {
      if (!std::binary_search(comp.begin(), comp.end(), a)) continue;
      Growth g = GrowFromSeed(set, graph, t, comp, a, b, tol);
      // Any placed edge that fails is a contradiction: each placement was
      // forced by the previous ones.
      for (const auto& [i, j] : graph.Edges()) {
        if (!g.cams[i] || !g.cams[j]) continue;
        const double d = ProjDistance(FundamentalMap(*g.cams[i], *g.cams[j], tol),
                                      set.F(i, j));
        if (!(d <= tol.residual_tol)) {
          const std::string id = ConditionId("graph.edge", std::array<int, 2>{i, j});
          report.residuals.push_back({id, d});
          report.failing.push_back(id);
          report.verdict = Verdict::kIncompatible;
          report.note = "contradiction while chaining from seed (" +
                        std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
          return report;
        }
      }
      if (!best || g.placed > best->placed) best = std::move(g);
      if (best->placed == comp.size()) break;
    }
    for (const auto& [i, j] : graph.Edges()) {
      if (!best->cams[i] || !best->cams[j]) continue;
      report.residuals.push_back(
          {ConditionId("graph.edge", std::array<int, 2>{i, j}),
           ProjDistance(FundamentalMap(*best->cams[i], *best->cams[j], tol),
                        set.F(i, j))});
    }
    if (best->placed < comp.size()) {
      report.verdict = Verdict::kUndetermined;
      report.note = "views not reachable by chaining triangles from any seed";
    }
  }
  return report;
}

}  // namespace fundcheck
