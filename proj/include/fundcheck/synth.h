#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fundcheck/fundamental.h"
#include "fundcheck/fundamental_set.h"

namespace fundcheck {

enum class SceneCase { kCase1, kCase2, kCase3, kCase4, kGeneral };

std::string ToString(SceneCase c);
// Accepts "case1".."case4", "general" (case-insensitive). Throws InvalidInput.
SceneCase ParseSceneCase(const std::string& s);

struct SceneSpec {
  int n = 4;
  SceneCase scene_case = SceneCase::kCase1;
  std::uint64_t seed = 0;
  double spread = 1.0;  // scale of the center coordinates
};

// Random finite cameras A_i [I | -c_i] with centers placed for the requested
// configuration:
//   kCase1  general position
//   kCase2  coplanar, no three collinear
//   kCase3  all but one collinear (the odd view sits at a seed-chosen index)
//   kCase4  all collinear
// Scenes whose epipoles land near a classification boundary are redrawn.
// Deterministic in the seed. Throws InvalidInput on an unsupported n.
std::vector<Camera> RandomScene(const SceneSpec& spec);

// Adds eps * |F| * D / |D| with Gaussian D to each unit-normalized F^{ij},
// then truncates to rank 2. eps = 0 returns the input unchanged.
FundamentalSet Perturb(const FundamentalSet& set, double eps,
                       std::uint64_t seed);

}  // namespace fundcheck
