#include "fundcheck/nview.h"

#include <gtest/gtest.h>

#include "fundcheck/io.h"
#include "test_support.h"

namespace fundcheck {
namespace {

using test_util::CodeOf;
using test_util::SceneSet;

Camera Translation(const Eigen::Vector3d& t) {
  Camera p;
  p << Eigen::Matrix3d::Identity(), t;
  return p;
}

TEST(Assemble, TranslationTripleIsSymmetric) {
  std::vector<Camera> cams = {Translation({0, 0, 0}), Translation({1, 0, 0}),
                              Translation({0, 2, 1})};
  FundamentalSet set = ComputeFundamentalSet(cams);
  NViewMatrix nv = Assemble(set, Eigen::MatrixXd::Ones(3, 3));
  EXPECT_EQ(nv.m.rows(), 9);
  EXPECT_EQ(nv.m, nv.m.transpose());
  EXPECT_EQ((nv.m.block<3, 3>(0, 0)), Eigen::Matrix3d::Zero());
  EXPECT_EQ((nv.m.block<3, 3>(3, 6)), set.F(1, 2));
  EXPECT_EQ((nv.m.block<3, 3>(6, 3)), set.F(2, 1));
}

TEST(Assemble, RejectsBadScales) {
  FundamentalSet set = SceneSet(3, SceneCase::kGeneral, 1);
  Eigen::MatrixXd s = Eigen::MatrixXd::Ones(3, 3);
  s(0, 1) = 2.0;
  EXPECT_EQ(CodeOf([&] { Assemble(set, s); }), ErrorCode::kInvalidInput);
  s(0, 1) = s(1, 0) = 0.0;
  EXPECT_EQ(CodeOf([&] { Assemble(set, s); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([&] { Assemble(set, Eigen::MatrixXd::Ones(2, 2)); }),
            ErrorCode::kInvalidInput);
}

TEST(RecoverScales, MatchPsiScaling) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<Camera> cams;
    FundamentalSet truth = SceneSet(5, SceneCase::kCase1, seed, &cams);
    // Hide the scales, then recover them.
    FundamentalSet scrambled(5);
    for (auto [i, j] : truth.Edges()) {
      scrambled.Set(i, j, truth.F(i, j) * (0.5 + std::abs(test_util::Gauss(rng))));
    }
    Eigen::MatrixXd scales = RecoverScales(scrambled);
    NViewDiagnostics d =
        KggTest(Assemble(scrambled, scales), NViewMode::kNonCollinear);
    EXPECT_TRUE(d.consistent) << seed;
    EXPECT_GT(scales(0, 1), 0.0);
  }
}

TEST(RecoverScales, CounterexampleFails) {
  FundamentalSet set =
      SetFromJson(ReadJsonFile(test_util::DataPath("example2.json")));
  EXPECT_EQ(CodeOf([&] { RecoverScales(set); }),
            ErrorCode::kScaleRecoveryError);
}

TEST(KggTest, GenericRankSix) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FundamentalSet set = SceneSet(5, SceneCase::kCase1, seed);
    NViewDiagnostics d = KggTest(Assemble(set, RecoverScales(set)),
                                 ResolveMode(set, NViewMode::kAuto));
    EXPECT_EQ(d.mode, NViewMode::kNonCollinear);
    EXPECT_EQ(d.rank, 6);
    EXPECT_EQ(d.positive, 3);
    EXPECT_EQ(d.negative, 3);
    for (int r : d.block_row_ranks) EXPECT_EQ(r, 3);
    EXPECT_TRUE(d.consistent);
    EXPECT_GT(d.smallest_kept, 1e3 * d.largest_dropped);
  }
}

TEST(KggTest, CollinearRankFour) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FundamentalSet set = SceneSet(5, SceneCase::kCase4, seed);
    NViewDiagnostics d = KggTest(Assemble(set, RecoverScales(set)),
                                 ResolveMode(set, NViewMode::kAuto));
    EXPECT_EQ(d.mode, NViewMode::kCollinear);
    EXPECT_EQ(d.rank, 4);
    EXPECT_EQ(d.positive, 2);
    EXPECT_EQ(d.negative, 2);
    for (int r : d.block_row_ranks) EXPECT_EQ(r, 2);
    EXPECT_TRUE(d.consistent);
  }
}

TEST(KggTest, UnitScalesAreWrong) {
  FundamentalSet set = GaugeNormalized(SceneSet(5, SceneCase::kCase1, 4));
  NViewDiagnostics d = KggTest(Assemble(set, Eigen::MatrixXd::Ones(5, 5)),
                               NViewMode::kNonCollinear);
  EXPECT_FALSE(d.consistent);
  EXPECT_GT(d.rank, 6);
}

TEST(RankOnlyTest, AgreesWithFullTest) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FundamentalSet set = SceneSet(5, SceneCase::kCase1, seed);
    NViewMatrix nv = Assemble(set, RecoverScales(set));
    RankOnlyResult r = RankOnlyTest(nv, set, NViewMode::kNonCollinear);
    EXPECT_EQ(r.verdict, Verdict::kCompatible) << r.note;
  }
}

TEST(RankOnlyTest, UndeterminedWithCollinearEpipoles) {
  // Coplanar centers put three epipoles on a line in every image.
  FundamentalSet set = SceneSet(4, SceneCase::kCase2, 2);
  RankOnlyResult r = RankOnlyTest(Assemble(set, RecoverScales(set)), set,
                                  NViewMode::kNonCollinear);
  EXPECT_EQ(r.verdict, Verdict::kUndetermined);
}

TEST(ScaleGridSearch, FindsRankSixOnGridScene) {
  // Translation cameras with unit scales give skew blocks that already
  // satisfy the consistency conditions.
  std::vector<Camera> cams = {Translation({0, 0, 0}), Translation({1, 0, 0}),
                              Translation({0, 1, 0}), Translation({0, 0, 1})};
  FundamentalSet set = ComputeFundamentalSet(cams);
  FundamentalSet scrambled = set;
  scrambled.Set(0, 2, -1.0 * set.F(0, 2));
  std::vector<double> grid = {-1.0, 1.0};
  ScaleSearch s = ScaleGridSearch(scrambled, grid, NViewMode::kNonCollinear);
  EXPECT_EQ(s.min_rank, 6);
  EXPECT_EQ(s.evaluated, 32u);
  EXPECT_TRUE(KggTest(Assemble(scrambled, s.best_scales),
                      NViewMode::kNonCollinear).consistent);
}

TEST(ScaleGridSearch, EmptyGridThrows) {
  FundamentalSet set = SceneSet(3, SceneCase::kGeneral, 1);
  EXPECT_EQ(CodeOf([&] {
              ScaleGridSearch(set, {}, NViewMode::kNonCollinear);
            }),
            ErrorCode::kInvalidInput);
}

}  // namespace
}  // namespace fundcheck
