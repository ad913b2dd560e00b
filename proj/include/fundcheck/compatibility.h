#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fundcheck/fundamental_set.h"
#include "fundcheck/projective.h"
#include "fundcheck/types.h"

namespace fundcheck {

// Epipoles at projective distance <= kCoincideTol are the same point, above
// kCoincideTol * kAmbiguityFactor they are distinct; in between the
// classification is ambiguous. The same thresholds apply to the determinant
// of three unit epipoles when testing collinearity.
inline constexpr double kCoincideTol = 1e-6;
inline constexpr double kAmbiguityFactor = 100.0;

struct NamedValue {
  std::string id;
  double value = 0.0;
};

struct QuadrupleOutcome {
  std::array<int, 4> views{};  // 0-based, ascending
  CaseTag case_tag = CaseTag::kAmbiguous;
  Verdict verdict = Verdict::kUndetermined;
  std::vector<std::string> failing;
};

struct CompatReport {
  Verdict verdict = Verdict::kUndetermined;
  CaseTag case_tag = CaseTag::kAmbiguous;
  // Conditions that vanish on compatible input.
  std::vector<NamedValue> residuals;
  // Informational quantities: product sides, separation margins.
  std::vector<NamedValue> values;
  std::vector<std::string> failing;
  std::vector<QuadrupleOutcome> quadruples;
  Tolerances tol;
  std::string note;

  double MaxResidual() const;
};

// Condition ids use 1-based view labels, e.g. "triple.bilinear.123". Labels
// above 9 are separated by '-'.
std::string ConditionId(const std::string& family, std::span<const int> views);

// The three bilinear conditions e_1^3 F12 e_2^3 = e_1^2 F13 e_3^2 =
// e_2^1 F23 e_3^1 = 0 for distinct epipoles. Undetermined when two epipoles in
// some image coincide. `labels` names the views in condition ids.
CompatReport CheckTripleNonCollinear(const Eigen::Matrix3d& f12,
                                     const Eigen::Matrix3d& f13,
                                     const Eigen::Matrix3d& f23,
                                     const Tolerances& tol = {},
                                     std::array<int, 3> labels = {0, 1, 2});

// Coincident epipoles in each image and F21 [e_1^2]_x F13 ~ F23.
CompatReport CheckTripleCollinear(const Eigen::Matrix3d& f12,
                                  const Eigen::Matrix3d& f13,
                                  const Eigen::Matrix3d& f23,
                                  const Tolerances& tol = {},
                                  std::array<int, 3> labels = {0, 1, 2});

// Triple dispatcher on the epipole pattern.
CompatReport CheckTriple(const FundamentalSet& triple, const Tolerances& tol = {},
                         std::array<int, 3> labels = {0, 1, 2});

struct QuadrupleClass {
  CaseTag tag = CaseTag::kAmbiguous;
  int distinguished = -1;  // Case 3: the view whose epipoles are distinct
};

QuadrupleClass ClassifyQuadruple(const FundamentalSet& quad,
                                 const Tolerances& tol = {});

// Case-specific tests on a complete 4-view set. Each includes the relevant
// triple conditions.
CompatReport CheckCase1(const FundamentalSet& quad, const Tolerances& tol = {},
                        std::array<int, 4> labels = {0, 1, 2, 3});
CompatReport CheckCase2(const FundamentalSet& quad, const Tolerances& tol = {},
                        std::array<int, 4> labels = {0, 1, 2, 3});
CompatReport CheckCase3(const FundamentalSet& quad, int distinguished,
                        const Tolerances& tol = {},
                        std::array<int, 4> labels = {0, 1, 2, 3});
CompatReport CheckCase4(const FundamentalSet& quad, const Tolerances& tol = {},
                        std::array<int, 4> labels = {0, 1, 2, 3});

// Classify and dispatch.
CompatReport CheckQuadruple(const FundamentalSet& quad,
                            const Tolerances& tol = {},
                            std::array<int, 4> labels = {0, 1, 2, 3});

// Case-2 conditions read off the normal form: the four relations
// x_jk x_kl y_jl + y_jk y_kl x_jl = 0 and the six-term relation among the
// x/y/z entries, each relative to its largest term. Used as a second route.
std::vector<NamedValue> Case2NormalFormResiduals(const FundamentalSet& quad,
                                                 const Tolerances& tol = {});

struct CheckOptions {
  // For n >= 5, first check only the quadruples through an anchor pair whose
  // line carries no other center; fall back to all quadruples on failure.
  bool anchor_reduction = true;
};

// Complete set, n >= 3. Throws InvalidInput / RankError on malformed input.
CompatReport CheckComplete(const FundamentalSet& set, const Tolerances& tol = {},
                           const CheckOptions& options = {});

// Family iff all epipoles in every image coincide.
Uniqueness SolutionUniqueness(const FundamentalSet& set,
                              const Tolerances& tol = {});

}  // namespace fundcheck
