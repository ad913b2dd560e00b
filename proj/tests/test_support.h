#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "fundcheck/error.h"
#include "fundcheck/fundamental.h"
#include "fundcheck/fundamental_set.h"
#include "fundcheck/epipolar.h"
#include "fundcheck/synth.h"

namespace fundcheck::test_util {

inline std::string DataPath(const std::string& name) {
  return std::string(FUNDCHECK_TEST_DATA_DIR) + "/" + name;
}

// Code of the fundcheck::Error thrown by fn; a test failure if none is.
inline ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidInput;
}

inline double Gauss(std::mt19937_64& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline Eigen::MatrixXd RandomMatrix(std::mt19937_64& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = Gauss(rng);
  }
  return m;
}

inline Camera RandomCamera(std::mt19937_64& rng) {
  return RandomMatrix(rng, 3, 4);
}

// Well-conditioned random 3x3, rejecting anything close to singular.
inline Eigen::Matrix3d RandomInvertible(std::mt19937_64& rng) {
  while (true) {
    Eigen::Matrix3d h = RandomMatrix(rng, 3, 3);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(h);
    if (svd.singularValues()(2) > 0.1 * svd.singularValues()(0)) return h;
  }
}

inline FundamentalAction RandomAction(std::mt19937_64& rng, int n) {
  FundamentalAction action;
  for (int i = 0; i < n; ++i) action.h.push_back(RandomInvertible(rng));
  return action;
}

inline FundamentalSet SceneSet(int n, SceneCase c, std::uint64_t seed,
                               std::vector<Camera>* cameras = nullptr) {
  std::vector<Camera> cams = RandomScene({n, c, seed, 1.0});
  if (cameras) *cameras = cams;
  return ComputeFundamentalSet(cams);
}

// Well-conditioned change of world coordinates.
inline Eigen::Matrix4d RandomHomography(std::mt19937_64& rng) {
  while (true) {
    Eigen::Matrix4d h = RandomMatrix(rng, 4, 4);
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(h);
    if (svd.singularValues()(3) > 0.1 * svd.singularValues()(0)) return h;
  }
}

}  // namespace fundcheck::test_util
