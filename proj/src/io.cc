#include "fundcheck/io.h"

#include <fstream>
#include <sstream>

#include "fundcheck/error.h"

namespace fundcheck {

using nlohmann::json;

namespace {

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kInvalidInput, what);
}

void RequireKind(const json& doc, const std::string& kind) {
  if (!doc.is_object()) Bad("document is not a JSON object");
  if (!doc.contains("kind") || doc["kind"] != kind) {
    Bad("expected a document of kind '" + kind + "'");
  }
  if (!doc.contains("version") || doc["version"] != kDocumentVersion) {
    Bad("unsupported document version");
  }
}

template <int R, int C>
Eigen::Matrix<double, R, C> MatrixFrom(const json& j, const char* what) {
  if (!j.is_array() || j.size() != R) {
    Bad(std::string(what) + " must have " + std::to_string(R) + " rows");
  }
  Eigen::Matrix<double, R, C> m;
  for (int r = 0; r < R; ++r) {
    if (!j[r].is_array() || j[r].size() != C) {
      Bad(std::string(what) + " rows must have " + std::to_string(C) + " entries");
    }
    for (int c = 0; c < C; ++c) {
      if (!j[r][c].is_number()) Bad(std::string(what) + " has a non-numeric entry");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

template <typename M>
json MatrixTo(const M& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

std::pair<int, int> EdgeFrom(const json& j, int n) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    Bad("edges must be pairs of integers");
  }
  const int i = j[0].get<int>(), k = j[1].get<int>();
  if (i < 1 || k < 1 || i > n || k > n) Bad("edge index out of range");
  if (i >= k) Bad("edges must be written [i, j] with i < j");
  return {i - 1, k - 1};
}

}  // namespace

json CamerasToJson(const std::vector<Camera>& cameras) {
  json doc = {{"kind", "cameras"}, {"version", kDocumentVersion}};
  doc["cameras"] = json::array();
  for (const Camera& p : cameras) doc["cameras"].push_back(MatrixTo(p));
  return doc;
}

std::vector<Camera> CamerasFromJson(const json& doc) {
  RequireKind(doc, "cameras");
  if (!doc.contains("cameras") || !doc["cameras"].is_array()) {
    Bad("cameras document needs a 'cameras' array");
  }
  std::vector<Camera> out;
  for (const json& p : doc["cameras"]) out.push_back(MatrixFrom<3, 4>(p, "camera"));
  return out;
}

json SetToJson(const FundamentalSet& set) {
  json doc = {{"kind", "fundamental_set"},
              {"version", kDocumentVersion},
              {"n", set.NumViews()}};
  doc["matrices"] = json::array();
  for (const auto& [i, j] : set.Edges()) {
    doc["matrices"].push_back({{"edge", {i + 1, j + 1}}, {"F", MatrixTo(set.F(i, j))}});
  }
  return doc;
}

FundamentalSet SetFromJson(const json& doc) {
  RequireKind(doc, "fundamental_set");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<int>() < 2) {
    Bad("fundamental_set needs an integer 'n' >= 2");
  }
  if (!doc.contains("matrices") || !doc["matrices"].is_array()) {
    Bad("fundamental_set needs a 'matrices' array");
  }
  FundamentalSet set(doc["n"].get<int>());
  for (const json& entry : doc["matrices"]) {
    if (!entry.is_object() || !entry.contains("edge") || !entry.contains("F")) {
      Bad("each matrix entry needs 'edge' and 'F'");
    }
    const auto [i, j] = EdgeFrom(entry["edge"], set.NumViews());
    if (set.HasEdge(i, j)) Bad("duplicate edge in fundamental_set");
    set.Set(i, j, MatrixFrom<3, 3>(entry["F"], "F"));
  }
  return set;
}

json GraphToJson(const ViewingGraph& graph) {
  json doc = {{"kind", "graph"}, {"version", kDocumentVersion}};
  doc["vertices"] = json::array();
  for (int v = 0; v < graph.NumVertices(); ++v) doc["vertices"].push_back(v + 1);
  doc["edges"] = json::array();
  for (const auto& [i, j] : graph.Edges()) doc["edges"].push_back({i + 1, j + 1});
  return doc;
}

ViewingGraph GraphFromJson(const json& doc) {
  RequireKind(doc, "graph");
  if (!doc.contains("vertices") || !doc["vertices"].is_array() ||
      !doc.contains("edges") || !doc["edges"].is_array()) {
    Bad("graph needs 'vertices' and 'edges' arrays");
  }
  const int n = static_cast<int>(doc["vertices"].size());
  for (int v = 0; v < n; ++v) {
    if (doc["vertices"][v] != v + 1) Bad("vertices must be 1..n in order");
  }
  std::vector<std::pair<int, int>> edges;
  for (const json& e : doc["edges"]) edges.push_back(EdgeFrom(e, n));
  try {
    return ViewingGraph(n, std::move(edges));
  } catch (const Error& e) {
    Bad(e.what());
  }
}

namespace {

json NamedValues(const std::vector<NamedValue>& values) {
  json out = json::array();
  for (const NamedValue& v : values) out.push_back({{"id", v.id}, {"value", v.value}});
  return out;
}

}  // namespace

json ReportToJson(const CompatReport& report) {
  json doc = {{"kind", "report"},
              {"version", kDocumentVersion},
              {"verdict", ToString(report.verdict)},
              {"case", ToString(report.case_tag)},
              {"max_residual", report.MaxResidual()},
              {"residuals", NamedValues(report.residuals)},
              {"values", NamedValues(report.values)},
              {"failing", report.failing},
              {"tolerances",
               {{"rank", report.tol.rank_tol},
                {"residual", report.tol.residual_tol},
                {"proj", report.tol.proj_tol}}}};
  if (!report.note.empty()) doc["note"] = report.note;
  if (!report.quadruples.empty()) {
    json quads = json::array();
    for (const QuadrupleOutcome& q : report.quadruples) {
      quads.push_back({{"views", {q.views[0] + 1, q.views[1] + 1, q.views[2] + 1,
                                  q.views[3] + 1}},
                       {"case", ToString(q.case_tag)},
                       {"verdict", ToString(q.verdict)},
                       {"failing", q.failing}});
    }
    doc["quadruples"] = quads;
  }
  return doc;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    Bad(path + ": " + e.what());
  }
}

std::string DumpJson(const json& doc) { return doc.dump(2); }

void WriteJsonFile(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) Bad("cannot write " + path);
  out << DumpJson(doc) << "\n";
}

}  // namespace fundcheck
