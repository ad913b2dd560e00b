// fundcheck: compatibility of fundamental matrices from the command line.
//
//   fundcheck compute cameras.json            -> fundamental_set
//   fundcheck check set.json [--graph g.json] -> report
//   fundcheck reconstruct set.json            -> cameras
//   fundcheck nview set.json [--mode auto]    -> n-view matrix diagnostics
//   fundcheck cycle set.json [--graph g.json] -> cameras from skew edges
//   fundcheck synth --case case1 --n 4        -> fundamental_set
//
// Exit codes: 0 compatible, 1 incompatible, 2 input error, 3 undetermined.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fundcheck/compatibility.h"
#include "fundcheck/cycle.h"
#include "fundcheck/error.h"
#include "fundcheck/io.h"
#include "fundcheck/nview.h"
#include "fundcheck/reconstruction.h"
#include "fundcheck/synth.h"

namespace fc = fundcheck;
using nlohmann::json;

namespace {

constexpr int kExitCompatible = 0;
constexpr int kExitIncompatible = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUndetermined = 3;

int ExitFor(fc::Verdict v) {
  switch (v) {
    case fc::Verdict::kCompatible: return kExitCompatible;
    case fc::Verdict::kIncompatible: return kExitIncompatible;
    case fc::Verdict::kUndetermined: return kExitUndetermined;
  }
  return kExitInputError;
}

int ExitFor(const fc::Error& e) {
  switch (e.code()) {
    case fc::ErrorCode::kReconstructionFailed:
    case fc::ErrorCode::kScaleRecoveryError:
    case fc::ErrorCode::kCycleConditionViolated:
      return kExitIncompatible;
    case fc::ErrorCode::kDegenerateConfiguration:
      return kExitUndetermined;
    default:
      return kExitInputError;
  }
}

void Emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << fc::DumpJson(doc) << "\n";
  } else {
    fc::WriteJsonFile(out_path, doc);
  }
}

// Unit Frobenius norm, first clearly nonzero entry positive.
Eigen::Matrix3d SignNormalized(const Eigen::Matrix3d& f) {
  Eigen::Matrix3d out = f / f.norm();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (std::abs(out(r, c)) > 1e-12) return out(r, c) < 0 ? Eigen::Matrix3d(-out) : out;
  return out;
}

json CheckOne(const std::string& path, const std::string& graph_path,
              const fc::Tolerances& tol, int* exit_code) {
  const fc::FundamentalSet set = fc::SetFromJson(fc::ReadJsonFile(path));
  fc::CompatReport report;
  if (!graph_path.empty()) {
    report = fc::CheckGeneralGraph(set, fc::GraphFromJson(fc::ReadJsonFile(graph_path)), tol);
  } else if (set.IsComplete()) {
    report = fc::CheckComplete(set, tol);
  } else {
    std::vector<std::pair<int, int>> edges = set.Edges();
    report = fc::CheckGeneralGraph(set, fc::ViewingGraph(set.NumViews(), edges), tol);
  }
  *exit_code = ExitFor(report.verdict);
  return fc::ReportToJson(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compatibility of fundamental matrices"};
  app.require_subcommand(1);

  fc::Tolerances tol;
  if (const char* env = std::getenv("FUNDCHECK_TOL_RESIDUAL")) {
    try {
      tol.residual_tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: FUNDCHECK_TOL_RESIDUAL is not a number\n";
      return kExitInputError;
    }
  }
  std::string out_path;
  app.add_option("--tol-rank", tol.rank_tol, "Relative singular value cutoff");
  app.add_option("--tol-residual", tol.residual_tol, "Residual tolerance");
  app.add_option("-o,--output", out_path, "Write the result here instead of stdout");

  std::string input, graph_path, batch_dir, mode_name = "auto", case_name = "case1",
                                            cameras_out;
  int n = 4;
  std::uint64_t seed = 0;
  double noise = 0.0, spread = 1.0;

  auto* compute = app.add_subcommand("compute", "Fundamental matrices of cameras");
  compute->add_option("cameras", input, "cameras document")->required();
  compute->fallthrough();

  auto* check = app.add_subcommand("check", "Compatibility verdict");
  check->add_option("set", input, "fundamental_set document");
  check->add_option("--graph", graph_path, "graph document for a partial set");
  check->add_option("--batch", batch_dir, "check every *.json in a directory");
  check->fallthrough();

  auto* reconstruct = app.add_subcommand("reconstruct", "Cameras realizing a set");
  reconstruct->add_option("set", input, "fundamental_set document")->required();
  reconstruct->fallthrough();

  auto* nview = app.add_subcommand("nview", "n-view matrix rank and signature");
  nview->add_option("set", input, "fundamental_set document")->required();
  nview->add_option("--mode", mode_name, "auto, noncollinear or collinear")
      ->check(CLI::IsMember({"auto", "noncollinear", "collinear"}));
  nview->fallthrough();

  auto* cycle = app.add_subcommand("cycle", "Cycle condition for skew-symmetric sets");
  cycle->add_option("set", input, "fundamental_set of skew-symmetric matrices")->required();
  cycle->add_option("--graph", graph_path, "graph document (default: edges of the set)");
  cycle->fallthrough();

  auto* synth = app.add_subcommand("synth", "Random scene and its fundamental set");
  synth->add_option("--case", case_name, "case1..case4 or general");
  synth->add_option("--n", n, "number of views");
  synth->add_option("--seed", seed, "random seed");
  synth->add_option("--noise", noise, "relative perturbation of each matrix");
  synth->add_option("--spread", spread, "scale of the centers");
  synth->add_option("--cameras-out", cameras_out, "also write the cameras here");
  synth->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    tol.Validate();
    if (compute->parsed()) {
      const auto cams = fc::CamerasFromJson(fc::ReadJsonFile(input));
      fc::FundamentalSet set = fc::ComputeFundamentalSet(cams, tol);
      fc::FundamentalSet out(set.NumViews());
      for (const auto& [i, j] : set.Edges()) out.Set(i, j, SignNormalized(set.F(i, j)));
      Emit(fc::SetToJson(out), out_path);
      return kExitCompatible;
    }
    if (check->parsed()) {
      if (batch_dir.empty() == input.empty()) {
        std::cerr << "error: give either a set file or --batch DIR\n";
        return kExitInputError;
      }
      if (!batch_dir.empty()) {
        std::vector<std::string> files;
        for (const auto& entry : std::filesystem::directory_iterator(batch_dir)) {
          if (entry.path().extension() == ".json") files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        json all = json::array();
        int worst = kExitCompatible;
        const auto rank = [](int code) {
          return code == kExitInputError ? 3 : code == kExitIncompatible ? 2
                 : code == kExitUndetermined ? 1 : 0;
        };
        for (const std::string& f : files) {
          int code = kExitInputError;
          json entry;
          try {
            entry = CheckOne(f, graph_path, tol, &code);
          } catch (const fc::Error& e) {
            code = ExitFor(e);
            entry = {{"error", e.what()}};
          }
          entry["file"] = f;
          all.push_back(entry);
          if (rank(code) > rank(worst)) worst = code;
        }
        Emit(all, out_path);
        return worst;
      }
      int code = kExitInputError;
      Emit(CheckOne(input, graph_path, tol, &code), out_path);
      return code;
    }
    if (reconstruct->parsed()) {
      const fc::FundamentalSet set = fc::SetFromJson(fc::ReadJsonFile(input));
      const fc::Reconstruction rec = fc::ReconstructComplete(set, tol);
      json doc = fc::CamerasToJson(rec.cameras);
      doc["residual"] = rec.residual;
      doc["uniqueness"] = fc::ToString(rec.uniqueness);
      Emit(doc, out_path);
      return kExitCompatible;
    }
    if (nview->parsed()) {
      const fc::FundamentalSet set = fc::SetFromJson(fc::ReadJsonFile(input));
      const fc::NViewMode requested = mode_name == "collinear" ? fc::NViewMode::kCollinear
                                      : mode_name == "noncollinear"
                                          ? fc::NViewMode::kNonCollinear
                                          : fc::NViewMode::kAuto;
      const fc::NViewMode mode = fc::ResolveMode(set, requested, tol);
      const Eigen::MatrixXd scales = fc::RecoverScales(set, tol);
      const fc::NViewMatrix nv = fc::Assemble(set, scales);
      const fc::NViewDiagnostics kgg = fc::KggTest(nv, mode, tol);
      const fc::RankOnlyResult rank_only = fc::RankOnlyTest(nv, set, mode, tol);
      json scale_rows = json::array();
      for (int i = 0; i < scales.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < scales.cols(); ++j) row.push_back(scales(i, j));
        scale_rows.push_back(row);
      }
      json doc = {{"kind", "report"},
                  {"version", fc::kDocumentVersion},
                  {"mode", fc::ToString(mode)},
                  {"scales", scale_rows},
                  {"rank", kgg.rank},
                  {"signature", {kgg.positive, kgg.negative}},
                  {"block_row_ranks", kgg.block_row_ranks},
                  {"eigenvalues", kgg.eigenvalues},
                  {"smallest_kept", kgg.smallest_kept},
                  {"largest_dropped", kgg.largest_dropped},
                  {"consistent", kgg.consistent},
                  {"rank_only", fc::ToString(rank_only.verdict)}};
      if (!rank_only.note.empty()) doc["note"] = rank_only.note;
      Emit(doc, out_path);
      return kgg.consistent ? kExitCompatible : kExitIncompatible;
    }
    if (cycle->parsed()) {
      const fc::FundamentalSet set = fc::SetFromJson(fc::ReadJsonFile(input));
      const fc::ViewingGraph graph =
          graph_path.empty() ? fc::ViewingGraph(set.NumViews(), set.Edges())
                             : fc::GraphFromJson(fc::ReadJsonFile(graph_path));
      const fc::SkewEdgeData data = fc::SkewDataFromSet(set, graph, tol);
      const fc::CycleResidual res = fc::CycleResiduals(graph, data);
      json doc = fc::CamerasToJson(fc::CamerasFromCycleSolution(graph, data, tol));
      doc["cycle_residual"] = res.max_residual;
      Emit(doc, out_path);
      return kExitCompatible;
    }
    if (synth->parsed()) {
      fc::SceneSpec spec;
      spec.n = n;
      spec.scene_case = fc::ParseSceneCase(case_name);
      spec.seed = seed;
      spec.spread = spread;
      const auto cams = fc::RandomScene(spec);
      if (!cameras_out.empty()) fc::WriteJsonFile(cameras_out, fc::CamerasToJson(cams));
      const fc::FundamentalSet set =
          fc::Perturb(fc::ComputeFundamentalSet(cams, tol), noise, seed);
      Emit(fc::SetToJson(set), out_path);
      return kExitCompatible;
    }
  } catch (const fc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
