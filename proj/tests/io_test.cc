#include "fundcheck/io.h"

#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>

#include "test_support.h"

namespace fundcheck {
namespace {

using nlohmann::json;
using test_util::CodeOf;

TEST(SetJson, RoundTripIsBitExact) {
  std::mt19937_64 rng(1);
  FundamentalSet set(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      set.Set(i, j, test_util::RandomMatrix(rng, 3, 3) * 1e-7);
    }
  }
  FundamentalSet back = SetFromJson(json::parse(DumpJson(SetToJson(set))));
  ASSERT_EQ(back.NumViews(), 4);
  for (auto [i, j] : set.Edges()) EXPECT_EQ(back.F(i, j), set.F(i, j));
}

TEST(SetJson, OneBasedEdgesAndPartialSets) {
  json doc = json::parse(R"({"kind": "fundamental_set", "version": 1, "n": 3,
    "matrices": [{"edge": [1, 3], "F": [[1, 2, 3], [4, 5, 6], [7, 8, 9]]}]})");
  FundamentalSet set = SetFromJson(doc);
  EXPECT_EQ(set.NumEdges(), 1u);
  EXPECT_EQ(set.F(0, 2)(0, 1), 2.0);
  EXPECT_EQ(set.F(2, 0)(1, 0), 2.0);
  doc["matrices"][0]["edge"] = json::array({3, 1});
  EXPECT_EQ(CodeOf([&] { SetFromJson(doc); }), ErrorCode::kInvalidInput);
}

TEST(SetJson, Malformed) {
  const char* bad[] = {
      R"({"kind": "cameras", "version": 1, "cameras": []})",
      R"({"kind": "fundamental_set", "version": 2, "n": 3, "matrices": []})",
      R"({"kind": "fundamental_set", "version": 1, "matrices": []})",
      R"({"kind": "fundamental_set", "version": 1, "n": 3,
          "matrices": [{"edge": [1, 4], "F": [[1,0,0],[0,1,0],[0,0,0]]}]})",
      R"({"kind": "fundamental_set", "version": 1, "n": 3,
          "matrices": [{"edge": [1, 2], "F": [[1,0],[0,1]]}]})",
      R"({"kind": "fundamental_set", "version": 1, "n": 3,
          "matrices": [{"edge": [1, 2], "F": [[1,0,0],[0,1,0],[0,0,"x"]]}]})",
      R"({"kind": "fundamental_set", "version": 1, "n": 3,
          "matrices": [{"edge": [1, 2], "F": [[1,0,0],[0,1,0],[0,0,0]]},
                       {"edge": [2, 1], "F": [[1,0,0],[0,1,0],[0,0,0]]}]})",
  };
  for (const char* text : bad) {
    json doc = json::parse(text);
    EXPECT_EQ(CodeOf([&] { SetFromJson(doc); }), ErrorCode::kInvalidInput)
        << text;
  }
}

TEST(CamerasJson, RoundTrip) {
  std::vector<Camera> cams = RandomScene({4, SceneCase::kCase1, 3, 1.0});
  std::vector<Camera> back =
      CamerasFromJson(json::parse(DumpJson(CamerasToJson(cams))));
  ASSERT_EQ(back.size(), cams.size());
  for (std::size_t v = 0; v < cams.size(); ++v) EXPECT_EQ(back[v], cams[v]);
}

TEST(GraphJson, RoundTrip) {
  ViewingGraph g(4, {{0, 1}, {1, 2}, {2, 3}});
  json doc = GraphToJson(g);
  EXPECT_EQ(doc["edges"][0], json::array({1, 2}));
  ViewingGraph back = GraphFromJson(doc);
  EXPECT_EQ(back.Edges(), g.Edges());
  EXPECT_EQ(back.NumVertices(), 4);
  json loop = json::parse(
      R"({"kind": "graph", "version": 1, "vertices": [1, 2], "edges": [[1, 1]]})");
  EXPECT_EQ(CodeOf([&] { GraphFromJson(loop); }), ErrorCode::kInvalidInput);
}

TEST(ReportJson, Fields) {
  FundamentalSet set = SetFromJson(
      ReadJsonFile(test_util::DataPath("example2.json")));
  json doc = ReportToJson(CheckComplete(set));
  EXPECT_EQ(doc["kind"], "report");
  EXPECT_EQ(doc["verdict"], "incompatible");
  EXPECT_EQ(doc["case"], "Case1");
  EXPECT_EQ(doc["failing"][0], "quad.case1.product.1234");
  EXPECT_EQ(doc["tolerances"]["residual"], 1e-8);
  EXPECT_EQ(doc["quadruples"][0]["views"], json::array({1, 2, 3, 4}));
}

TEST(Files, WriteThenRead) {
  std::filesystem::path path =
      std::filesystem::temp_directory_path() / "fundcheck_io_test.json";
  FundamentalSet set = test_util::SceneSet(3, SceneCase::kGeneral, 2);
  WriteJsonFile(path.string(), SetToJson(set));
  FundamentalSet back = SetFromJson(ReadJsonFile(path.string()));
  for (auto [i, j] : set.Edges()) EXPECT_EQ(back.F(i, j), set.F(i, j));
  std::filesystem::remove(path);
  EXPECT_EQ(CodeOf([&] { ReadJsonFile(path.string()); }),
            ErrorCode::kInvalidInput);
}

}  // namespace
}  // namespace fundcheck
