#include "fundcheck/synth.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "fundcheck/compatibility.h"
#include "fundcheck/epipolar.h"
#include "fundcheck/error.h"

namespace fundcheck {

std::string ToString(SceneCase c) {
  switch (c) {
    case SceneCase::kCase1: return "case1";
    case SceneCase::kCase2: return "case2";
    case SceneCase::kCase3: return "case3";
    case SceneCase::kCase4: return "case4";
    case SceneCase::kGeneral: return "general";
  }
  return "unknown";
}

SceneCase ParseSceneCase(const std::string& s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  for (SceneCase c : {SceneCase::kCase1, SceneCase::kCase2, SceneCase::kCase3,
                      SceneCase::kCase4, SceneCase::kGeneral}) {
    if (lower == ToString(c)) return c;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown scene case '" + s + "'");
}

namespace {

constexpr int kMaxDraws = 1000;
constexpr double kMaxCameraCondition = 1e3;
// Epipole distances and triple determinants that are not zero by
// construction must be at least this large.
constexpr double kGenericMargin = 1e-3;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double Normal() { return normal_(rng_); }
  Eigen::Vector3d Vec3() { return {Normal(), Normal(), Normal()}; }
  int Index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

std::vector<Eigen::Vector3d> DrawCenters(const SceneSpec& spec, Sampler& s,
                                         int* odd_view) {
  const int n = spec.n;
  std::vector<Eigen::Vector3d> c(n);
  const Eigen::Vector3d origin = spec.spread * s.Vec3();
  const Eigen::Vector3d u = s.Vec3().normalized();
  const Eigen::Vector3d v = s.Vec3().normalized();
  for (int i = 0; i < n; ++i) {
    switch (spec.scene_case) {
      case SceneCase::kCase1:
      case SceneCase::kGeneral:
        c[i] = spec.spread * s.Vec3();
        break;
      case SceneCase::kCase2:
        c[i] = origin + spec.spread * (s.Normal() * u + s.Normal() * v);
        break;
      case SceneCase::kCase3:
      case SceneCase::kCase4:
        c[i] = origin + spec.spread * s.Normal() * u;
        break;
    }
  }
  if (spec.scene_case == SceneCase::kCase3) {
    *odd_view = s.Index(n);
    c[*odd_view] = spec.spread * s.Vec3();
  }
  return c;
}

bool WellConditioned(const Eigen::Matrix3d& a) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(a);
  const auto& sv = svd.singularValues();
  return sv[2] > 0 && sv[0] / sv[2] < kMaxCameraCondition;
}

// The configuration every quadruple of the scene should be classified as.
CaseTag ExpectedQuadCase(SceneCase scene, const std::array<int, 4>& q,
                         int odd_view) {
  switch (scene) {
    case SceneCase::kCase1: return CaseTag::kCase1;
    case SceneCase::kCase2: return CaseTag::kCase2;
    case SceneCase::kCase4: return CaseTag::kCase4;
    case SceneCase::kCase3:
      return std::find(q.begin(), q.end(), odd_view) != q.end() ? CaseTag::kCase3
                                                                : CaseTag::kCase4;
    case SceneCase::kGeneral: break;
  }
  return CaseTag::kAmbiguous;
}

bool SceneIsClean(const std::vector<Camera>& cams, SceneCase scene, int odd_view) {
  FundamentalSet set;
  try {
    set = ComputeFundamentalSet(cams);
    set = GaugeNormalized(set);
  } catch (const Error&) {
    return false;
  }
  const int n = static_cast<int>(cams.size());
  const EpipoleTable t = EpipoleTable::Build(set);
  const auto generic = [](double m) {
    return m <= kCoincideTol || m >= kGenericMargin;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        if (i == j || i == k) continue;
        if (!generic(ProjDistance(t(i, j), t(i, k)))) return false;
        for (int l = k + 1; l < n; ++l) {
          if (l == i) continue;
          Eigen::Matrix3d m;
          m << t(i, j), t(i, k), t(i, l);
          if (!generic(std::abs(m.determinant()))) return false;
        }
      }
  if (n == 3) {
    const CompatReport r = CheckTriple(set);
    return r.case_tag != CaseTag::kAmbiguous && r.case_tag != CaseTag::kInconsistent;
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const std::array<int, 4> q = {a, b, c, d};
          const CaseTag got = ClassifyQuadruple(set.Subset(q)).tag;
          if (got == CaseTag::kAmbiguous || got == CaseTag::kInconsistent) {
            return false;
          }
          if (scene != SceneCase::kGeneral &&
              got != ExpectedQuadCase(scene, q, odd_view)) {
            return false;
          }
        }
  return true;
}

int MinViews(SceneCase c) {
  switch (c) {
    case SceneCase::kCase1:
    case SceneCase::kCase2:
    case SceneCase::kCase3: return 4;
    case SceneCase::kCase4: return 3;
    case SceneCase::kGeneral: return 2;
  }
  return 2;
}

}  // namespace

std::vector<Camera> RandomScene(const SceneSpec& spec) {
  if (spec.n < MinViews(spec.scene_case) || spec.n > 64) {
    throw Error(ErrorCode::kInvalidInput,
                "unsupported view count " + std::to_string(spec.n) + " for " +
                    ToString(spec.scene_case));
  }
  if (!(spec.spread > 0.0) || !std::isfinite(spec.spread)) {
    throw Error(ErrorCode::kInvalidInput, "spread must be positive");
  }
  Sampler s(spec.seed);
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    int odd_view = -1;
    const std::vector<Eigen::Vector3d> centers = DrawCenters(spec, s, &odd_view);
    std::vector<Camera> cams(spec.n);
    bool ok = true;
    for (int i = 0; i < spec.n && ok; ++i) {
      Eigen::Matrix3d a;
      a << s.Vec3(), s.Vec3(), s.Vec3();
      ok = WellConditioned(a);
      cams[i].leftCols<3>() = a;
      cams[i].col(3) = -a * centers[i];
    }
    if (ok && SceneIsClean(cams, spec.scene_case, odd_view)) return cams;
  }
  throw Error(ErrorCode::kInvalidInput, "could not draw a clean scene");
}

FundamentalSet Perturb(const FundamentalSet& set, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidInput, "noise level must be non-negative");
  }
  if (eps == 0.0) return set;
  Sampler s(seed);
  FundamentalSet out(set.NumViews());
  for (const auto& [i, j] : set.Edges()) {
    const Eigen::Matrix3d f = set.F(i, j);
    Eigen::Matrix3d d;
    d << s.Vec3(), s.Vec3(), s.Vec3();
    const Eigen::Matrix3d noisy = f / f.norm() + eps * d / d.norm();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(noisy, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Vector3d sv = svd.singularValues();
    sv[2] = 0.0;
    out.Set(i, j, svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose());
  }
  return out;
}

}  // namespace fundcheck
