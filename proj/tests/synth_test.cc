#include "fundcheck/synth.h"

#include <gtest/gtest.h>

#include "fundcheck/compatibility.h"
#include "test_support.h"

namespace fundcheck {
namespace {

using test_util::CodeOf;

TEST(ParseSceneCase, Names) {
  EXPECT_EQ(ParseSceneCase("case1"), SceneCase::kCase1);
  EXPECT_EQ(ParseSceneCase("CASE3"), SceneCase::kCase3);
  EXPECT_EQ(ParseSceneCase("General"), SceneCase::kGeneral);
  EXPECT_EQ(ToString(SceneCase::kCase4), "case4");
  EXPECT_EQ(CodeOf([] { ParseSceneCase("case5"); }), ErrorCode::kInvalidInput);
}

TEST(RandomScene, Deterministic) {
  SceneSpec spec{5, SceneCase::kCase2, 42, 1.0};
  std::vector<Camera> a = RandomScene(spec);
  std::vector<Camera> b = RandomScene(spec);
  ASSERT_EQ(a.size(), 5u);
  for (int v = 0; v < 5; ++v) EXPECT_EQ(a[v], b[v]);
  spec.seed = 43;
  EXPECT_NE(RandomScene(spec)[0], a[0]);
}

TEST(RandomScene, CenterConfigurations) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (int n : {4, 6}) {
      auto rank_of_centers = [&](SceneCase c) {
        std::vector<Camera> cams = RandomScene({n, c, seed, 1.0});
        Eigen::MatrixXd centers(4, n);
        for (int v = 0; v < n; ++v) centers.col(v) = CameraCenter(cams[v]);
        return RankWithTol(centers, 1e-9);
      };
      EXPECT_EQ(rank_of_centers(SceneCase::kCase1), 4);
      EXPECT_EQ(rank_of_centers(SceneCase::kCase2), 3);
      EXPECT_EQ(rank_of_centers(SceneCase::kCase3), 3);
      EXPECT_EQ(rank_of_centers(SceneCase::kCase4), 2);
    }
  }
}

TEST(RandomScene, MinimumViews) {
  EXPECT_EQ(CodeOf([] { RandomScene({3, SceneCase::kCase1, 0, 1.0}); }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([] { RandomScene({2, SceneCase::kCase4, 0, 1.0}); }),
            ErrorCode::kInvalidInput);
  EXPECT_NO_THROW(RandomScene({2, SceneCase::kGeneral, 0, 1.0}));
}

TEST(Perturb, ZeroNoiseIsIdentity) {
  FundamentalSet set = test_util::SceneSet(4, SceneCase::kCase1, 1);
  FundamentalSet same = Perturb(set, 0.0, 5);
  for (auto [i, j] : set.Edges()) EXPECT_EQ(same.F(i, j), set.F(i, j));
}

TEST(Perturb, RankTwoAndRelativeSize) {
  FundamentalSet set = test_util::SceneSet(4, SceneCase::kCase1, 1);
  FundamentalSet noisy = Perturb(set, 1e-3, 5);
  for (auto [i, j] : set.Edges()) {
    Eigen::Matrix3d a = set.F(i, j) / set.F(i, j).norm();
    Eigen::Matrix3d b = noisy.F(i, j) / noisy.F(i, j).norm();
    double d = std::min((a - b).norm(), (a + b).norm());
    EXPECT_GT(d, 1e-5);
    EXPECT_LT(d, 3e-3);
    EXPECT_EQ(RankWithTol(noisy.F(i, j), 1e-9), 2);
  }
}

}  // namespace
}  // namespace fundcheck
