#include "fundcheck/compatibility.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include <Eigen/Dense>

#include "fundcheck/epipolar.h"
#include "fundcheck/error.h"

namespace fundcheck {

double CompatReport::MaxResidual() const {
  double worst = 0.0;
  for (const auto& r : residuals) worst = std::max(worst, r.value);
  return worst;
}

std::string ConditionId(const std::string& family, std::span<const int> views) {
  const bool wide = std::any_of(views.begin(), views.end(),
                                [](int v) { return v + 1 > 9; });
  std::string id = family + ".";
  for (std::size_t k = 0; k < views.size(); ++k) {
    if (wide && k > 0) id += "-";
    id += std::to_string(views[k] + 1);
  }
  return id;
}

namespace {

enum class Relation { kSame, kDistinct, kAmbiguous };

Relation Compare(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const double d = ProjDistance(a, b);
  if (d <= kCoincideTol) return Relation::kSame;
  if (d > kCoincideTol * kAmbiguityFactor) return Relation::kDistinct;
  return Relation::kAmbiguous;
}

Relation Collinearity(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                      const Eigen::Vector3d& c) {
  Eigen::Matrix3d m;
  m << a.normalized(), b.normalized(), c.normalized();
  const double det = std::abs(m.determinant());
  if (det <= kCoincideTol) return Relation::kSame;
  if (det > kCoincideTol * kAmbiguityFactor) return Relation::kDistinct;
  return Relation::kAmbiguous;
}

Verdict Combine(Verdict a, Verdict b) {
  if (a == Verdict::kIncompatible || b == Verdict::kIncompatible) {
    return Verdict::kIncompatible;
  }
  if (a == Verdict::kUndetermined || b == Verdict::kUndetermined) {
    return Verdict::kUndetermined;
  }
  return Verdict::kCompatible;
}

void Absorb(CompatReport& into, const CompatReport& part) {
  into.residuals.insert(into.residuals.end(), part.residuals.begin(),
                        part.residuals.end());
  into.values.insert(into.values.end(), part.values.begin(),
                     part.values.end());
  into.failing.insert(into.failing.end(), part.failing.begin(),
                      part.failing.end());
  into.verdict = Combine(into.verdict, part.verdict);
  if (!part.note.empty()) {
    into.note += into.note.empty() ? part.note : "; " + part.note;
  }
}

// Records a vanishing condition and marks the report failing if it is too
// large.
void AddResidual(CompatReport& r, const std::string& id, double value) {
  r.residuals.push_back({id, value});
  if (!(value <= r.tol.residual_tol)) {
    r.failing.push_back(id);
    r.verdict = Verdict::kIncompatible;
  }
}

CompatReport Start(CaseTag tag, const Tolerances& tol) {
  CompatReport r;
  r.verdict = Verdict::kCompatible;
  r.case_tag = tag;
  r.tol = tol;
  return r;
}

Eigen::Matrix3d Unit(const Eigen::Matrix3d& f) {
  const double n = f.norm();
  if (n == 0.0) throw Error(ErrorCode::kRankError, "zero fundamental matrix");
  return f / n;
}

std::array<int, 3> Pick(const std::array<int, 4>& labels, int a, int b, int c) {
  return {labels[a], labels[b], labels[c]};
}

constexpr std::array<std::array<int, 3>, 4> kTriplesOfFour = {
    {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};

}  // namespace

CompatReport CheckTripleNonCollinear(const Eigen::Matrix3d& f12_in,
                                     const Eigen::Matrix3d& f13_in,
                                     const Eigen::Matrix3d& f23_in,
                                     const Tolerances& tol,
                                     std::array<int, 3> labels) {
  CompatReport r = Start(CaseTag::kTripleNonCollinear, tol);
  const Eigen::Matrix3d f12 = Unit(f12_in);
  const Eigen::Matrix3d f13 = Unit(f13_in);
  const Eigen::Matrix3d f23 = Unit(f23_in);
  const Eigen::Vector3d e12 = LeftKernel(f12, tol).vec();
  const Eigen::Vector3d e13 = LeftKernel(f13, tol).vec();
  const Eigen::Vector3d e21 = RightKernel(f12, tol).vec();
  const Eigen::Vector3d e23 = LeftKernel(f23, tol).vec();
  const Eigen::Vector3d e31 = RightKernel(f13, tol).vec();
  const Eigen::Vector3d e32 = RightKernel(f23, tol).vec();

  const double separation = std::min(
      {ProjDistance(e12, e13), ProjDistance(e21, e23), ProjDistance(e31, e32)});
  r.values.push_back({ConditionId("triple.separation", labels), separation});
  if (Compare(e12, e13) != Relation::kDistinct ||
      Compare(e21, e23) != Relation::kDistinct ||
      Compare(e31, e32) != Relation::kDistinct) {
    r.verdict = Verdict::kUndetermined;
    r.note = "not applicable (collinear epipoles) for " +
             ConditionId("triple", labels);
    return r;
  }
  const double b1 = e13.dot(f12 * e23);
  const double b2 = e12.dot(f13 * e32);
  const double b3 = e21.dot(f23 * e31);
  const std::string id = ConditionId("triple.bilinear", labels);
  r.values.push_back({id + ".a", b1});
  r.values.push_back({id + ".b", b2});
  r.values.push_back({id + ".c", b3});
  AddResidual(r, id, std::max({std::abs(b1), std::abs(b2), std::abs(b3)}));
  return r;
}

CompatReport CheckTripleCollinear(const Eigen::Matrix3d& f12_in,
                                  const Eigen::Matrix3d& f13_in,
                                  const Eigen::Matrix3d& f23_in,
                                  const Tolerances& tol,
                                  std::array<int, 3> labels) {
  CompatReport r = Start(CaseTag::kTripleCollinear, tol);
  const Eigen::Matrix3d f12 = Unit(f12_in);
  const Eigen::Matrix3d f13 = Unit(f13_in);
  const Eigen::Matrix3d f23 = Unit(f23_in);
  const Eigen::Vector3d e12 = LeftKernel(f12, tol).vec();
  const Eigen::Vector3d e13 = LeftKernel(f13, tol).vec();
  const Eigen::Vector3d e21 = RightKernel(f12, tol).vec();
  const Eigen::Vector3d e23 = LeftKernel(f23, tol).vec();
  const Eigen::Vector3d e31 = RightKernel(f13, tol).vec();
  const Eigen::Vector3d e32 = RightKernel(f23, tol).vec();

  const double spread = std::max(
      {ProjDistance(e12, e13), ProjDistance(e21, e23), ProjDistance(e31, e32)});
  r.values.push_back({ConditionId("triple.coincidence", labels), spread});
  const std::string id = ConditionId("triple.collinear.product", labels);
  for (Relation rel : {Compare(e12, e13), Compare(e21, e23), Compare(e31, e32)}) {
    if (rel == Relation::kDistinct) {
      r.verdict = Verdict::kIncompatible;
      r.failing.push_back(ConditionId("triple.coincidence", labels));
      r.note = "epipoles do not coincide for " + ConditionId("triple", labels);
      return r;
    }
    if (rel == Relation::kAmbiguous) {
      r.verdict = Verdict::kUndetermined;
      r.note = "epipole coincidence ambiguous for " +
               ConditionId("triple", labels);
      return r;
    }
  }
  const Eigen::Matrix3d product = f12.transpose() * CrossMatrix(e12) * f13;
  AddResidual(r, id, ProjDistance(product, f23));
  return r;
}

CompatReport CheckTriple(const FundamentalSet& triple, const Tolerances& tol,
                         std::array<int, 3> labels) {
  if (triple.NumViews() != 3 || !triple.IsComplete()) {
    throw Error(ErrorCode::kInvalidInput, "triple check needs three views");
  }
  const EpipoleTable t = EpipoleTable::Build(triple, tol);
  const std::array<Relation, 3> rel = {Compare(t(0, 1), t(0, 2)),
                                       Compare(t(1, 0), t(1, 2)),
                                       Compare(t(2, 0), t(2, 1))};
  const auto all = [&](Relation x) {
    return std::all_of(rel.begin(), rel.end(), [x](Relation y) { return y == x; });
  };
  const Eigen::Matrix3d f12 = triple.F(0, 1), f13 = triple.F(0, 2),
                        f23 = triple.F(1, 2);
  if (all(Relation::kSame)) return CheckTripleCollinear(f12, f13, f23, tol, labels);
  if (all(Relation::kDistinct)) {
    return CheckTripleNonCollinear(f12, f13, f23, tol, labels);
  }
  CompatReport r = Start(CaseTag::kAmbiguous, tol);
  if (std::find(rel.begin(), rel.end(), Relation::kAmbiguous) != rel.end()) {
    r.verdict = Verdict::kUndetermined;
    r.note = "epipole coincidence ambiguous";
    return r;
  }
  r.case_tag = CaseTag::kInconsistent;
  r.verdict = Verdict::kIncompatible;
  r.failing.push_back(ConditionId("triple.pattern", labels));
  r.note = "epipoles coincide in some images but not in others";
  return r;
}

namespace {

enum class ImagePattern { kGeneric, kLine, kPair, kAll, kAmbiguous };

struct ImageClass {
  ImagePattern pattern = ImagePattern::kAmbiguous;
  int odd = -1;  // kPair: the view whose epipole differs
};

ImageClass ClassifyImage(const EpipoleTable& t, int image) {
  std::array<int, 3> o{};
  int k = 0;
  for (int v = 0; v < 4; ++v) {
    if (v != image) o[k++] = v;
  }
  const std::array<std::pair<int, int>, 3> pairs = {
      {{o[0], o[1]}, {o[0], o[2]}, {o[1], o[2]}}};
  int same = 0;
  int odd = -1;
  for (int p = 0; p < 3; ++p) {
    const Relation rel = Compare(t(image, pairs[p].first), t(image, pairs[p].second));
    if (rel == Relation::kAmbiguous) return {};
    if (rel == Relation::kSame) {
      ++same;
      odd = o[2 - p];  // the view missing from this pair
    }
  }
  if (same == 3) return {ImagePattern::kAll, -1};
  if (same == 1) return {ImagePattern::kPair, odd};
  if (same == 2) return {};
  switch (Collinearity(t(image, o[0]), t(image, o[1]), t(image, o[2]))) {
    case Relation::kSame: return {ImagePattern::kLine, -1};
    case Relation::kDistinct: return {ImagePattern::kGeneric, -1};
    case Relation::kAmbiguous: break;
  }
  return {};
}

}  // namespace

QuadrupleClass ClassifyQuadruple(const FundamentalSet& quad,
                                 const Tolerances& tol) {
  if (quad.NumViews() != 4 || !quad.IsComplete()) {
    throw Error(ErrorCode::kInvalidInput, "quadruple check needs four views");
  }
  const EpipoleTable t = EpipoleTable::Build(quad, tol);
  std::array<ImageClass, 4> img;
  for (int i = 0; i < 4; ++i) {
    img[i] = ClassifyImage(t, i);
    if (img[i].pattern == ImagePattern::kAmbiguous) return {};
  }
  const auto count = [&](ImagePattern p) {
    return std::count_if(img.begin(), img.end(),
                         [p](const ImageClass& c) { return c.pattern == p; });
  };
  if (count(ImagePattern::kGeneric) == 4) return {CaseTag::kCase1, -1};
  if (count(ImagePattern::kLine) == 4) return {CaseTag::kCase2, -1};
  if (count(ImagePattern::kAll) == 4) return {CaseTag::kCase4, -1};
  if (count(ImagePattern::kLine) == 1 && count(ImagePattern::kPair) == 3) {
    int d = -1;
    for (int i = 0; i < 4; ++i) {
      if (img[i].pattern == ImagePattern::kLine) d = i;
    }
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      if (i != d && img[i].odd != d) ok = false;
    }
    if (ok) return {CaseTag::kCase3, d};
  }
  return {CaseTag::kInconsistent, -1};
}

CompatReport CheckCase1(const FundamentalSet& quad_in, const Tolerances& tol,
                        std::array<int, 4> labels) {
  const FundamentalSet quad = GaugeNormalized(quad_in);
  CompatReport r = Start(CaseTag::kCase1, tol);
  for (const auto& [a, b, c] : kTriplesOfFour) {
    Absorb(r, CheckTripleNonCollinear(quad.F(a, b), quad.F(a, c), quad.F(b, c),
                                      tol, Pick(labels, a, b, c)));
  }
  const EpipoleTable t = EpipoleTable::Build(quad, tol);
  // 1-based indices as in the identity.
  const auto num = [&](int s, int i, int j, int k) {
    return EpipolarNumber(quad, t, s - 1, i - 1, j - 1, k - 1);
  };
  const std::array<double, 6> lhs = {num(4, 1, 2, 3), num(2, 1, 3, 4),
                                     num(3, 1, 4, 2), num(4, 2, 3, 1),
                                     num(1, 2, 4, 3), num(2, 3, 4, 1)};
  const std::array<double, 6> rhs = {num(3, 1, 2, 4), num(4, 1, 3, 2),
                                     num(2, 1, 4, 3), num(1, 2, 3, 4),
                                     num(3, 2, 4, 1), num(1, 3, 4, 2)};
  double l = 1.0, rr = 1.0, smallest = INFINITY;
  for (int k = 0; k < 6; ++k) {
    l *= lhs[k];
    rr *= rhs[k];
    smallest = std::min({smallest, std::abs(lhs[k]), std::abs(rhs[k])});
  }
  r.values.push_back({ConditionId("quad.case1.lhs", labels), l});
  r.values.push_back({ConditionId("quad.case1.rhs", labels), rr});
  r.values.push_back({ConditionId("quad.case1.min_number", labels), smallest});
  if (smallest <= tol.residual_tol) {
    r.case_tag = CaseTag::kInconsistent;
    r.verdict = Verdict::kIncompatible;
    r.failing.push_back(ConditionId("quad.case1.zero_number", labels));
    r.note = "vanishing epipolar number with non-collinear epipoles";
    return r;
  }
  AddResidual(r, ConditionId("quad.case1.product", labels),
              std::abs(l - rr) / std::max(std::abs(l), std::abs(rr)));
  return r;
}

namespace {

// The six-term Case-2 relation, homogeneous after e_i^l = e_i^j + e_i^k.
// Returns nullopt if a denominator vanishes.
std::optional<double> Case2LongResidual(const FundamentalSet& q,
                                        const EpipoleTable& e,
                                        const Tolerances& tol) {
  std::array<Eigen::Vector3d, 4> x;
  for (int i = 0; i < 4; ++i) {
    std::array<int, 3> o{};
    int k = 0;
    for (int v = 0; v < 4; ++v) {
      if (v != i) o[k++] = v;
    }
    x[i] = q.F(i, o[0]) * e(o[0], o[2]);
    if (x[i].norm() == 0.0) return std::nullopt;
    x[i].normalize();
  }
  const auto form = [&](const Eigen::Vector3d& u, int a, int b,
                        const Eigen::Vector3d& v) { return u.dot(q.F(a, b) * v); };
  const double d24 = form(x[1], 1, 3, e(3, 0));
  const double d12 = form(x[0], 0, 1, e(1, 2));
  const double d34 = form(x[2], 2, 3, e(3, 0));
  const double d13 = form(x[0], 0, 2, e(2, 1));
  const double d23 = form(x[1], 1, 2, e(2, 0));
  const double d14 = form(e(0, 1), 0, 3, x[3]);
  for (double d : {d24, d12, d34, d13, d23, d14}) {
    if (std::abs(d) <= tol.residual_tol) return std::nullopt;
  }
  const std::array<double, 6> terms = {
      -form(e(1, 2), 1, 3, x[3]) / d24 * form(x[0], 0, 1, x[1]) / d12,
      form(e(2, 1), 2, 3, x[3]) / d34 * form(x[0], 0, 2, x[2]) / d13,
      form(e(2, 0), 2, 3, x[3]) / d34 * form(x[1], 1, 2, x[2]) / d23,
      -form(e(2, 1), 2, 3, x[3]) / d14 * form(e(0, 1), 0, 2, x[2]) / d13 *
          form(x[0], 0, 3, x[3]) / d34,
      form(x[1], 1, 3, x[3]) / d24,
      -form(x[2], 2, 3, x[3]) / d34,
  };
  double sum = 0.0, scale = 0.0;
  for (double t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  if (scale == 0.0) return std::nullopt;
  return std::abs(sum) / scale;
}

}  // namespace

CompatReport CheckCase2(const FundamentalSet& quad_in, const Tolerances& tol,
                        std::array<int, 4> labels) {
  const FundamentalSet quad = GaugeNormalized(quad_in);
  CompatReport r = Start(CaseTag::kCase2, tol);
  for (const auto& [a, b, c] : kTriplesOfFour) {
    Absorb(r, CheckTripleNonCollinear(quad.F(a, b), quad.F(a, c), quad.F(b, c),
                                      tol, Pick(labels, a, b, c)));
  }
  const EpipoleTable t = EpipoleTable::Build(quad, tol);
  for (int i = 0; i < 4; ++i) {
    std::array<int, 3> o{};
    int k = 0;
    for (int v = 0; v < 4; ++v) {
      if (v != i) o[k++] = v;
    }
    const auto [j, kk, l] = o;
    const Eigen::Vector3d ji = quad.F(j, kk) * t(kk, i);
    const Eigen::Vector3d jl = quad.F(j, l) * t(l, i);
    const Eigen::Vector3d kj = quad.F(kk, j) * t(j, i);
    const Eigen::Vector3d kl = quad.F(kk, l) * t(l, i);
    const Eigen::Vector3d lj = quad.F(l, j) * t(j, i);
    const Eigen::Vector3d lk = quad.F(l, kk) * t(kk, i);
    const double a = ji.dot(jl) * kj.dot(kl) * lj.dot(lk);
    const double b = lj.squaredNorm() * ji.squaredNorm() * kl.squaredNorm();
    const std::string id = "quad.case2.ijkF." + std::to_string(labels[i] + 1);
    if (std::min({lj.norm(), ji.norm(), kl.norm()}) <= tol.residual_tol) {
      r.verdict = Combine(r.verdict, Verdict::kUndetermined);
      r.note = "degenerate norm term in " + id;
      continue;
    }
    AddResidual(r, id, std::abs(a + b) / std::max(std::abs(a), b));
  }
  EpipoleTable scaled = t;
  try {
    for (int i = 0; i < 4; ++i) RescaleForSum(scaled, i, tol.residual_tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateConfiguration) throw;
    r.verdict = Combine(r.verdict, Verdict::kUndetermined);
    r.note = e.what();
    return r;
  }
  const auto long_residual = Case2LongResidual(quad, scaled, tol);
  if (!long_residual) {
    r.verdict = Combine(r.verdict, Verdict::kUndetermined);
    r.note = "vanishing denominator in the six-term relation";
    return r;
  }
  AddResidual(r, ConditionId("quad.case2.long", labels), *long_residual);
  return r;
}

std::vector<NamedValue> Case2NormalFormResiduals(const FundamentalSet& quad,
                                                 const Tolerances& tol) {
  const FundamentalSet gauge = GaugeNormalized(quad);
  const FundamentalSet g =
      ApplyAction(gauge, NormalizingAction(gauge, CaseTag::kCase2, tol));
  // Entry positions of x, y, z in each normal-form matrix.
  struct Entries { double x, y, z; };
  std::map<std::pair<int, int>, Entries> v;
  const auto read = [&](int i, int j, std::pair<int, int> px,
                        std::pair<int, int> py) {
    const Eigen::Matrix3d m = g.F(i, j) / g.F(i, j).norm();
    v[{i, j}] = {m(px.first, px.second), m(py.first, py.second), m(2, 2)};
  };
  read(0, 1, {1, 2}, {2, 1});
  read(0, 2, {0, 2}, {2, 1});
  read(0, 3, {0, 2}, {2, 1});
  read(1, 2, {0, 2}, {2, 0});
  read(1, 3, {0, 2}, {2, 0});
  read(2, 3, {0, 2}, {2, 0});
  std::vector<NamedValue> out;
  for (const auto& [j, k, l] : kTriplesOfFour) {
    const Entries& jk = v[{j, k}];
    const Entries& kl = v[{k, l}];
    const Entries& jl = v[{j, l}];
    const double t1 = jk.x * kl.x * jl.y;
    const double t2 = jk.y * kl.y * jl.x;
    const double scale = std::max(std::abs(t1), std::abs(t2));
    const std::array<int, 3> ids = {j, k, l};
    out.push_back({ConditionId("normal.case2.xy", ids),
                   scale == 0.0 ? 1.0 : std::abs(t1 + t2) / scale});
  }
  const auto r = [&](int i, int j, double Entries::*num) {
    const Entries& e = v[{i, j}];
    return e.*num / e.y;
  };
  const std::array<double, 6> terms = {
      r(1, 3, &Entries::x) * r(0, 1, &Entries::z),
      -r(2, 3, &Entries::x) * r(0, 2, &Entries::z),
      r(2, 3, &Entries::x) * r(1, 2, &Entries::z),
      -r(0, 3, &Entries::z),
      r(1, 3, &Entries::z),
      -r(2, 3, &Entries::z),
  };
  double sum = 0.0, scale = 0.0;
  for (double t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  out.push_back({"normal.case2.six_term",
                 scale == 0.0 ? 1.0 : std::abs(sum) / scale});
  return out;
}

CompatReport CheckCase3(const FundamentalSet& quad_in, int distinguished,
                        const Tolerances& tol, std::array<int, 4> labels) {
  if (distinguished < 0 || distinguished > 3) {
    throw Error(ErrorCode::kInvalidInput, "distinguished view out of range");
  }
  std::array<int, 4> order{};
  int k = 0;
  for (int v = 0; v < 4; ++v) {
    if (v != distinguished) order[k++] = v;
  }
  order[3] = distinguished;
  const FundamentalSet quad = GaugeNormalized(quad_in.Subset(order));
  std::array<int, 4> relabeled{};
  for (int v = 0; v < 4; ++v) relabeled[v] = labels[order[v]];

  CompatReport r = Start(CaseTag::kCase3, tol);
  Absorb(r, CheckTripleCollinear(quad.F(0, 1), quad.F(0, 2), quad.F(1, 2), tol,
                                 Pick(relabeled, 0, 1, 2)));
  for (const auto& [a, b, c] :
       std::array<std::array<int, 3>, 3>{{{0, 1, 3}, {0, 2, 3}, {1, 2, 3}}}) {
    std::array<int, 3> named = Pick(relabeled, a, b, c);
    Absorb(r, CheckTripleNonCollinear(quad.F(a, b), quad.F(a, c), quad.F(b, c),
                                      tol, named));
  }
  return r;
}

CompatReport CheckCase4(const FundamentalSet& quad_in, const Tolerances& tol,
                        std::array<int, 4> labels) {
  const FundamentalSet quad = GaugeNormalized(quad_in);
  CompatReport r = Start(CaseTag::kCase4, tol);
  for (const auto& [a, b, c] : kTriplesOfFour) {
    Absorb(r, CheckTripleCollinear(quad.F(a, b), quad.F(a, c), quad.F(b, c), tol,
                                   Pick(labels, a, b, c)));
  }
  return r;
}

CompatReport CheckQuadruple(const FundamentalSet& quad, const Tolerances& tol,
                            std::array<int, 4> labels) {
  const QuadrupleClass cls = ClassifyQuadruple(quad, tol);
  switch (cls.tag) {
    case CaseTag::kCase1: return CheckCase1(quad, tol, labels);
    case CaseTag::kCase2: return CheckCase2(quad, tol, labels);
    case CaseTag::kCase3: return CheckCase3(quad, cls.distinguished, tol, labels);
    case CaseTag::kCase4: return CheckCase4(quad, tol, labels);
    case CaseTag::kInconsistent: {
      CompatReport r = Start(CaseTag::kInconsistent, tol);
      r.verdict = Verdict::kIncompatible;
      r.failing.push_back(ConditionId("quad.pattern", labels));
      r.note = "epipole pattern matches no configuration of centers";
      return r;
    }
    default: {
      CompatReport r = Start(CaseTag::kAmbiguous, tol);
      r.verdict = Verdict::kUndetermined;
      r.note = "epipole pattern ambiguous for " + ConditionId("quad", labels);
      return r;
    }
  }
}

namespace {

std::string Family(const std::string& id) {
  const auto dot = id.rfind('.');
  return dot == std::string::npos ? id : id.substr(0, dot);
}

// Worst residual per condition family.
std::vector<NamedValue> WorstPerFamily(const std::vector<NamedValue>& all) {
  std::map<std::string, NamedValue> worst;
  for (const NamedValue& v : all) {
    const std::string fam = Family(v.id);
    auto it = worst.find(fam);
    if (it == worst.end() || v.value > it->second.value) worst[fam] = v;
  }
  std::vector<NamedValue> out;
  for (auto& [fam, v] : worst) out.push_back(v);
  return out;
}

std::optional<std::pair<int, int>> FindAnchor(const FundamentalSet& set,
                                              const EpipoleTable& t) {
  const int n = set.NumViews();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        if (i == a || i == b) continue;
        ok = Compare(t(a, b), t(a, i)) == Relation::kDistinct &&
             Compare(t(b, a), t(b, i)) == Relation::kDistinct;
      }
      if (ok) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

CompatReport RunQuadruples(const FundamentalSet& set,
                           const std::vector<std::array<int, 4>>& quads,
                           const Tolerances& tol) {
  CompatReport out = Start(CaseTag::kAmbiguous, tol);
  std::vector<NamedValue> residuals;
  std::optional<CaseTag> tag;
  bool mixed = false;
  for (const auto& q : quads) {
    const CompatReport r = CheckQuadruple(set.Subset(q), tol, q);
    out.quadruples.push_back({q, r.case_tag, r.verdict, r.failing});
    residuals.insert(residuals.end(), r.residuals.begin(), r.residuals.end());
    out.failing.insert(out.failing.end(), r.failing.begin(), r.failing.end());
    out.verdict = Combine(out.verdict, r.verdict);
    if (tag && *tag != r.case_tag) mixed = true;
    tag = r.case_tag;
    if (quads.size() == 1) {
      out.values = r.values;
      out.note = r.note;
    } else if (r.verdict == Verdict::kUndetermined && out.note.empty()) {
      out.note = r.note;
    }
  }
  out.case_tag = mixed ? CaseTag::kMixed : tag.value_or(CaseTag::kAmbiguous);
  out.residuals = quads.size() == 1 ? residuals : WorstPerFamily(residuals);
  return out;
}

}  // namespace

CompatReport CheckComplete(const FundamentalSet& set, const Tolerances& tol,
                           const CheckOptions& options) {
  tol.Validate();
  const int n = set.NumViews();
  if (n < 3) {
    throw Error(ErrorCode::kInvalidInput, "compatibility needs at least 3 views");
  }
  if (!set.IsComplete()) {
    throw Error(ErrorCode::kInvalidInput,
                "set is not complete; use the viewing-graph check");
  }
  const FundamentalSet gauge = GaugeNormalized(set);
  const EpipoleTable table = EpipoleTable::Build(gauge, tol);
  if (n == 3) return CheckTriple(gauge, tol);

  if (options.anchor_reduction && n >= 5) {
    if (const auto anchor = FindAnchor(gauge, table)) {
      const auto [a, b] = *anchor;
      std::vector<std::array<int, 4>> quads;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (i == a || i == b || j == a || j == b) continue;
          std::array<int, 4> q = {a, b, i, j};
          std::sort(q.begin(), q.end());
          quads.push_back(q);
        }
      }
      CompatReport r = RunQuadruples(gauge, quads, tol);
      if (r.verdict == Verdict::kCompatible) {
        r.note = "checked quadruples through anchor pair (" +
                 std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
        return r;
      }
    }
  }
  std::vector<std::array<int, 4>> quads;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) quads.push_back({a, b, c, d});
  return RunQuadruples(gauge, quads, tol);
}

Uniqueness SolutionUniqueness(const FundamentalSet& set, const Tolerances& tol) {
  const int n = set.NumViews();
  if (n < 3) return Uniqueness::kUnique;
  const EpipoleTable t = EpipoleTable::Build(set, tol);
  for (int i = 0; i < n; ++i) {
    const int first = i == 0 ? 1 : 0;
    for (int j = 0; j < n; ++j) {
      if (j == i || j == first || !set.HasEdge(i, j)) continue;
      if (Compare(t(i, first), t(i, j)) != Relation::kSame) {
        return Uniqueness::kUnique;
      }
    }
  }
  return Uniqueness::kFamily;
}

}  // namespace fundcheck
