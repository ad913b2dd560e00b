#include "fundcheck/reconstruction.h"

#include <gtest/gtest.h>

#include "fundcheck/compatibility.h"
#include "fundcheck/io.h"
#include "test_support.h"

namespace fundcheck {
namespace {

using test_util::CodeOf;
using test_util::SceneSet;

FundamentalSet Example(const std::string& name) {
  return SetFromJson(ReadJsonFile(test_util::DataPath(name)));
}

TEST(ReconstructComplete, GenericRoundTrip) {
  for (int n = 3; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      std::vector<Camera> truth;
      FundamentalSet set = SceneSet(n, SceneCase::kGeneral, seed, &truth);
      Reconstruction rec = ReconstructComplete(set);
      EXPECT_LE(rec.residual, 1e-9) << n << " " << seed;
      EXPECT_EQ(rec.uniqueness, Uniqueness::kUnique);
      EXPECT_TRUE(CentersEquivalent(rec.cameras, truth)) << n << " " << seed;
    }
  }
}

TEST(ReconstructComplete, TwoViews) {
  FundamentalSet set = SceneSet(2, SceneCase::kGeneral, 3);
  Reconstruction rec = ReconstructComplete(set);
  EXPECT_LE(rec.residual, 1e-14);
}

TEST(ReconstructComplete, CounterexampleFails) {
  try {
    ReconstructComplete(Example("example2.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kReconstructionFailed);
    EXPECT_TRUE(e.edge().has_value());
  }
}

TEST(ReconstructComplete, ResidualInvariantUnderRescaling) {
  std::mt19937_64 rng(8);
  FundamentalSet set = SceneSet(5, SceneCase::kCase1, 9);
  FundamentalSet scaled(5);
  for (auto [i, j] : set.Edges()) {
    double s = test_util::Gauss(rng);
    scaled.Set(i, j, (std::abs(s) + 0.1) * set.F(i, j));
  }
  EXPECT_LE(ReconstructComplete(scaled).residual, 1e-9);
  EXPECT_NEAR(ReconstructComplete(scaled).residual,
              ReconstructComplete(set).residual, 1e-10);
}

TEST(ReconstructComplete, ActionRelatedSetsGiveEquivalentCenters) {
  std::mt19937_64 rng(10);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    FundamentalSet set = SceneSet(5, SceneCase::kCase1, seed);
    FundamentalSet moved = ApplyAction(set, test_util::RandomAction(rng, 5));
    EXPECT_TRUE(CentersEquivalent(ReconstructComplete(set).cameras,
                                  ReconstructComplete(moved).cameras));
  }
}

TEST(ReconstructComplete, CollinearDelegates) {
  FundamentalSet set = SceneSet(5, SceneCase::kCase4, 1);
  Reconstruction rec = ReconstructComplete(set);
  EXPECT_EQ(rec.uniqueness, Uniqueness::kFamily);
  EXPECT_LE(rec.residual, 1e-8);
}

TEST(ReconstructCollinear, CentersOnALine) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FundamentalSet set = SceneSet(6, SceneCase::kCase4, seed);
    Reconstruction rec = ReconstructCollinear(set);
    EXPECT_LE(rec.residual, 1e-8);
    Eigen::Matrix<double, 4, 6> centers;
    for (int v = 0; v < 6; ++v) centers.col(v) = CameraCenter(rec.cameras[v]);
    EXPECT_EQ(RankWithTol(centers, 1e-9), 2);
  }
}

TEST(ReconstructCollinear, FamilyOfSolutions) {
  FundamentalSet set = SceneSet(4, SceneCase::kCase4, 5);
  std::vector<double> other = {-1.0, 0.5, 7.0};
  Reconstruction a = ReconstructCollinear(set);
  Reconstruction b = ReconstructCollinear(set, {}, other);
  EXPECT_LE(a.residual, 1e-8);
  EXPECT_LE(b.residual, 1e-8);
  EXPECT_FALSE(CentersEquivalent(a.cameras, b.cameras));
}

TEST(ReconstructCollinear, BadOffsets) {
  FundamentalSet set = SceneSet(4, SceneCase::kCase4, 5);
  std::vector<double> repeated = {1.0, 1.0, 2.0};
  EXPECT_EQ(CodeOf([&] { ReconstructCollinear(set, {}, repeated); }),
            ErrorCode::kInvalidInput);
}

TEST(ReconstructCollinear, CounterexampleFails) {
  EXPECT_EQ(CodeOf([] { ReconstructCollinear(Example("example1.json")); }),
            ErrorCode::kReconstructionFailed);
}

TEST(ExtendCamera, RecoversThirdCamera) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    Camera pa = test_util::RandomCamera(rng);
    Camera pb = test_util::RandomCamera(rng);
    Camera pv = test_util::RandomCamera(rng);
    Camera got = ExtendCamera(pa, FundamentalMap(pa, pv), pb,
                              FundamentalMap(pb, pv));
    EXPECT_LE(ProjDistance(got, pv), 1e-10);
  }
}

TEST(ExtendCamera, CollinearTripleIsDegenerate) {
  std::vector<Camera> cams = RandomScene({3, SceneCase::kCase4, 2, 1.0});
  EXPECT_EQ(CodeOf([&] {
              ExtendCamera(cams[0], FundamentalMap(cams[0], cams[2]), cams[1],
                           FundamentalMap(cams[1], cams[2]));
            }),
            ErrorCode::kDegenerateConfiguration);
}

TEST(CentersEquivalent, Basics) {
  std::mt19937_64 rng(14);
  std::vector<Camera> a, b, c;
  Eigen::Matrix4d h = test_util::RandomHomography(rng);
  for (int v = 0; v < 6; ++v) {
    a.push_back(test_util::RandomCamera(rng));
    b.push_back(a.back() * h);
    c.push_back(test_util::RandomCamera(rng));
  }
  EXPECT_TRUE(CentersEquivalent(a, a));
  EXPECT_TRUE(CentersEquivalent(a, b));
  EXPECT_FALSE(CentersEquivalent(a, c));
}

}  // namespace
}  // namespace fundcheck
