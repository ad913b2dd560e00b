#pragma once

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fundcheck/fundamental_set.h"
#include "fundcheck/projective.h"
#include "fundcheck/types.h"

namespace fundcheck {

// (e_i^j, e_j^i) for F = F^{ij}: the left and the right kernel.
std::pair<ProjVector3, ProjVector3> Epipoles(const Eigen::Matrix3d& f,
                                            const Tolerances& tol = {});

// Epipole representatives e_image^other for every pair present in a set.
// Built with unit norm; Case-2/3 normal forms overwrite some entries with
// rescaled representatives.
class EpipoleTable {
 public:
  static EpipoleTable Build(const FundamentalSet& set,
                            const Tolerances& tol = {});

  // e_image^other. Throws GraphError if absent.
  const Eigen::Vector3d& operator()(int image, int other) const;
  void Set(int image, int other, const Eigen::Vector3d& e);
  int NumViews() const { return n_; }

 private:
  int n_ = 0;
  std::map<std::pair<int, int>, Eigen::Vector3d> e_;
};

// (e_i^s)^T F^{ij} e_j^t.
double EpipolarNumber(const FundamentalSet& set, const EpipoleTable& table,
                      int s, int i, int j, int t);

// One invertible 3x3 matrix per view. Acts by F^{ij} -> H_i^T F^{ij} H_j.
struct FundamentalAction {
  std::vector<Eigen::Matrix3d> h;
};

FundamentalSet ApplyAction(const FundamentalSet& set,
                           const FundamentalAction& action);

// Coefficients (a, b) with e_l ~= a e_j + b e_k in the least squares sense.
Eigen::Vector2d CollinearSplit(const Eigen::Vector3d& e_j,
                               const Eigen::Vector3d& e_k,
                               const Eigen::Vector3d& e_l);

// Rescales e_image^j and e_image^k (j < k < l the other views of a
// quadruple) so that e_image^l = e_image^j + e_image^k.
// Throws DegenerateConfiguration if a coefficient vanishes.
void RescaleForSum(EpipoleTable& table, int image, double floor);

// Action bringing a 4-view set to its sparse normal form.
//   kCase1: H_i = [e_i^j e_i^k e_i^l]
//   kCase2: H_i = [e_i^j e_i^k x_i], rescaled so e_i^l = e_i^j + e_i^k,
//           x_i = F^{ij} e_j^l
//   kCase3: view 4 must be the distinguished one. H_i = [e_i^j e_i^l x_i]
//           for the three collinear views, H_4 = [e_4^1 e_4^2 e_4^1 x e_4^2]
//           with e_4^3 = e_4^1 + e_4^2
//   kCase4: any n, H_i = [e_i u v] for the common epipole e_i and an
//           orthonormal completion.
// Throws DegenerateConfiguration if some H_i is singular.
FundamentalAction NormalizingAction(const FundamentalSet& set, CaseTag c,
                                    const Tolerances& tol = {});

// Largest violation of the normal-form zero pattern, each matrix measured
// relative to its own norm.
double PatternResidual(const FundamentalSet& normalized, CaseTag c);

}  // namespace fundcheck
