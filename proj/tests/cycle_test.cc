#include "fundcheck/cycle.h"

#include <gtest/gtest.h>

#include "test_support.h"

namespace fundcheck {
namespace {

using test_util::CodeOf;

// Connected graph on n vertices: a random spanning tree plus extra edges
// with probability `density`.
ViewingGraph RandomConnectedGraph(std::mt19937_64& rng, int n, double density) {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (int v = 1; v < n; ++v) {
    int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    edges.emplace_back(u, v);
    used[u][v] = used[v][u] = true;
  }
  std::bernoulli_distribution extra(density);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!used[i][j] && extra(rng)) edges.emplace_back(i, j);
    }
  }
  return ViewingGraph(n, edges);
}

FundamentalSet TranslationSet(const ViewingGraph& graph,
                              const std::vector<Eigen::Vector3d>& t) {
  FundamentalSet set(graph.NumVertices());
  for (auto [i, j] : graph.Edges()) set.Set(i, j, CrossMatrix(t[j] - t[i]));
  return set;
}

TEST(ViewingGraph, Validation) {
  EXPECT_EQ(CodeOf([] { ViewingGraph(3, {{0, 0}}); }), ErrorCode::kGraphError);
  EXPECT_EQ(CodeOf([] { ViewingGraph(3, {{0, 3}}); }), ErrorCode::kGraphError);
  EXPECT_EQ(CodeOf([] { ViewingGraph(3, {{0, 1}, {1, 0}}); }),
            ErrorCode::kGraphError);
}

TEST(ViewingGraph, ComponentsAndNeighbors) {
  ViewingGraph g(5, {{3, 1}, {0, 2}, {1, 4}});
  EXPECT_EQ(g.Edges().front(), std::make_pair(0, 2));
  EXPECT_TRUE(g.HasEdge(1, 3));
  EXPECT_EQ(g.Neighbors(1), (std::vector<int>{3, 4}));
  auto comps = g.Components();
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0], (std::vector<int>{0, 2}));
  EXPECT_EQ(comps[1], (std::vector<int>{1, 3, 4}));
  EXPECT_FALSE(g.IsConnected());
  EXPECT_EQ(ViewingGraph::Complete(4).Edges().size(), 6u);
}

TEST(SkewEdgeData, Antisymmetric) {
  SkewEdgeData d;
  d.Set(2, 0, {1, 2, 3});
  EXPECT_EQ(d.G(0, 2), Eigen::Vector3d(-1, -2, -3));
  EXPECT_EQ(d.G(2, 0), Eigen::Vector3d(1, 2, 3));
  EXPECT_FALSE(d.Has(0, 1));
  EXPECT_EQ(CodeOf([&] { d.G(0, 1); }), ErrorCode::kGraphError);
  EXPECT_EQ(CodeOf([&] { d.Set(0, 1, Eigen::Vector3d::Zero()); }),
            ErrorCode::kInvalidInput);
}

TEST(SkewDataFromSet, RejectsNonSkew) {
  ViewingGraph g(2, {{0, 1}});
  FundamentalSet set(2);
  Eigen::Matrix3d f;
  f << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  set.Set(0, 1, f);
  EXPECT_EQ(CodeOf([&] { SkewDataFromSet(set, g); }), ErrorCode::kInvalidInput);
}

TEST(Cycle, TranslationDataRoundTrip) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 10)(rng);
    ViewingGraph g = RandomConnectedGraph(rng, n, 0.5);
    std::vector<Eigen::Vector3d> t;
    for (int v = 0; v < n; ++v) t.push_back(test_util::RandomMatrix(rng, 3, 1));
    FundamentalSet set = TranslationSet(g, t);
    SkewEdgeData data = SkewDataFromSet(set, g);
    EXPECT_LE(CycleResiduals(g, data).max_residual, 1e-12);
    std::vector<Camera> cams = CamerasFromCycleSolution(g, data);
    for (auto [i, j] : g.Edges()) {
      EXPECT_LE(ProjDistance(FundamentalMap(cams[i], cams[j]), set.F(i, j)),
                1e-10);
    }
  }
}

TEST(Cycle, BrokenTriangle) {
  ViewingGraph g = ViewingGraph::Complete(3);
  SkewEdgeData data;
  data.Set(0, 1, {1, 0, 0});
  data.Set(1, 2, {0, 1, 0});
  data.Set(0, 2, {1, 1, 0.5});
  CycleResidual r = CycleResiduals(g, data);
  EXPECT_GT(r.max_residual, 0.1);
  EXPECT_NE(r.worst_chord.first, -1);
  EXPECT_EQ(CodeOf([&] { CamerasFromCycleSolution(g, data); }),
            ErrorCode::kCycleConditionViolated);
}

TEST(Cycle, DisconnectedGraphRejected) {
  ViewingGraph g(4, {{0, 1}, {2, 3}});
  SkewEdgeData data;
  data.Set(0, 1, {1, 0, 0});
  data.Set(2, 3, {0, 1, 0});
  EXPECT_EQ(CodeOf([&] { CamerasFromCycleSolution(g, data); }),
            ErrorCode::kInvalidInput);
}

// With G^{ij} = [g^{ij}]_x scaled so that lambda_ij G^{ij} closes around
// every cycle, and h_j^i = g^{ij}, the ratio of epipolar numbers is
// -lambda_li / lambda_kl.
TEST(Cycle, EpipolarRatioIdentity) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Eigen::Vector3d> t;
    for (int v = 0; v < 4; ++v) t.push_back(test_util::RandomMatrix(rng, 3, 1));
    Eigen::Matrix4d lambda;
    for (int a = 0; a < 4; ++a) {
      for (int b = a; b < 4; ++b) {
        lambda(a, b) = lambda(b, a) = 0.5 + std::abs(test_util::Gauss(rng));
      }
    }
    auto g = [&](int a, int b) -> Eigen::Vector3d {
      return (t[b] - t[a]) / lambda(a, b);
    };
    const int i = 0, j = 1, k = 2, l = 3;
    double top = g(i, j).dot(g(j, k).cross(g(l, k)));
    double bottom = g(l, i).dot(g(i, j).cross(g(k, j)));
    EXPECT_NEAR(top / bottom, -lambda(l, i) / lambda(k, l), 1e-9);
  }
}

TEST(CheckGeneralGraph, TriangleChainCompatible) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FundamentalSet full = test_util::SceneSet(6, SceneCase::kGeneral, seed);
    ViewingGraph g(6, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3},
                       {2, 4}, {3, 4}, {3, 5}});
    FundamentalSet set(6);
    for (auto [i, j] : g.Edges()) set.Set(i, j, full.F(i, j));
    CompatReport r = CheckGeneralGraph(set, g);
    EXPECT_EQ(r.verdict, Verdict::kCompatible) << seed << " " << r.note;
  }
}

TEST(CheckGeneralGraph, ReplacedEdgeIncompatible) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FundamentalSet full = test_util::SceneSet(5, SceneCase::kGeneral, seed);
    ViewingGraph g(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
    FundamentalSet set(5);
    for (auto [i, j] : g.Edges()) set.Set(i, j, full.F(i, j));
    set.Set(2, 4, FundamentalMap(test_util::RandomCamera(rng),
                                 test_util::RandomCamera(rng)));
    EXPECT_EQ(CheckGeneralGraph(set, g).verdict, Verdict::kIncompatible)
        << seed;
  }
}

TEST(CheckGeneralGraph, SquareIsUndetermined) {
  FundamentalSet full = test_util::SceneSet(4, SceneCase::kGeneral, 1);
  ViewingGraph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  FundamentalSet set(4);
  for (auto [i, j] : g.Edges()) set.Set(i, j, full.F(i, j));
  EXPECT_EQ(CheckGeneralGraph(set, g).verdict, Verdict::kUndetermined);
}

TEST(CheckGeneralGraph, PendantAttached) {
  FundamentalSet full = test_util::SceneSet(4, SceneCase::kGeneral, 2);
  ViewingGraph g(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  FundamentalSet set(4);
  for (auto [i, j] : g.Edges()) set.Set(i, j, full.F(i, j));
  EXPECT_EQ(CheckGeneralGraph(set, g).verdict, Verdict::kCompatible);
}

}  // namespace
}  // namespace fundcheck
