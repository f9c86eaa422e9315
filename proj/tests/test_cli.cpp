#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "elevenfloer/cli.hpp"

namespace fs = std::filesystem;
using namespace elevenfloer;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "elevenfloer");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ELEVENFLOER_DATA_DIR) + "/" + name; }

fs::path scratch_dir() {
  fs::path p = fs::temp_directory_path() / ("elevenfloer-cli-" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Compute, UnknotText) {
  Invocation r = run({"compute", data("unknot.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("tau = 0, genus = 0"), std::string::npos) << r.out;
}

TEST(Compute, PretzelTau) {
  Invocation r = run({"compute", data("pretzel-7-5.json"), "--tau"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "tau = -6\n");
}

TEST(Compute, FixtureComplexFile) {
  Invocation r = run({"compute", data("10_161-complex.json"), "--tau", "--genus"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "tau = -3\ngenus = 3\n");
}

TEST(Compute, BadResidueIsInvalidInput) {
  Invocation r = run({"compute", data("bad-residue.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ResidueCoverage"), std::string::npos) << r.err;
}

TEST(Compute, MissingFileIsIoFailure) {
  Invocation r = run({"compute", (scratch_dir() / "does-not-exist.json").string()});
  EXPECT_EQ(r.code, 3);
}

TEST(Compute, MalformedJsonIsInvalidInput) {
  fs::path p = scratch_dir() / "broken.json";
  std::ofstream(p) << "{\"n\": 2, \"arcs\": [";
  Invocation r = run({"compute", p.string()});
  EXPECT_EQ(r.code, 1);
}

TEST(Compute, JsonIsDeterministicAcrossJobs) {
  std::vector<std::string> files{data("trefoil.json"), data("pretzel-5-5.json"), data("unknot-finger.json")};
  std::vector<std::string> a{"compute", "--out", "json", "--jobs", "1"}, b{"compute", "--out", "json", "--jobs", "3"};
  a.insert(a.end(), files.begin(), files.end());
  b.insert(b.end(), files.begin(), files.end());
  Invocation ra = run(a), rb = run(b);
  EXPECT_EQ(ra.code, 0) << ra.err;
  EXPECT_EQ(ra.out, rb.out);
  auto j = nlohmann::json::parse(ra.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["tau"], -1);
  EXPECT_EQ(j[1]["tau"], -5);
  EXPECT_EQ(j[1]["genus"], 5);
  EXPECT_EQ(j[1]["bounds"]["sharp"], true);
  for (const auto& item : j)
    for (const auto& [k, v] : item["checks"].items())
      if (v.is_boolean()) {
        EXPECT_TRUE(v.get<bool>()) << k;
      }
}

TEST(Compute, WritesSvg) {
  fs::path svg = scratch_dir() / "trefoil.svg";
  Invocation r = run({"compute", data("trefoil.json"), "--svg", svg.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream in(svg);
  std::string head(4, '\0');
  in.read(head.data(), 4);
  EXPECT_EQ(head, "<svg");
}

TEST(Pretzel, CompareSevenFive) {
  Invocation r = run({"pretzel", "--m", "7", "--n", "5", "--compare"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("oracle = closed-form = engine"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("tau = -6"), std::string::npos) << r.out;
}

TEST(Pretzel, ClosedFormFiveThreeJson) {
  Invocation r = run({"pretzel", "--m", "5", "--n", "3", "--closed-form", "--out", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["genus"], 4);
  EXPECT_EQ(j["tau"], -4);
  std::map<int, std::pair<int, int>> nonneg;
  for (const auto& e : j["hfk"]) {
    int a = e["A"];
    if (a >= 0) nonneg[a] = {e["M"].get<int>(), e["rank"].get<int>()};
  }
  EXPECT_EQ(nonneg, (std::map<int, std::pair<int, int>>{{4, {8, 1}}, {3, {7, 1}}, {1, {4, 1}}, {0, {3, 1}}}));
}

TEST(Pretzel, EvenParameterIsRejected) {
  Invocation r = run({"pretzel", "--m", "4", "--n", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("BadParams"), std::string::npos) << r.err;
}

TEST(Catalog, ListsBuiltins) {
  Invocation r = run({"catalog", "list"});
  EXPECT_EQ(r.code, 0);
  for (const char* name : {"10_161", "10_129", "unknot", "pretzel-5-5"})
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
}

TEST(Catalog, AliasShowsFixture) {
  Invocation r = run({"catalog", "show", "10_162", "--out", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["knot"], "10_161");
  EXPECT_EQ(j["tau"], -3);
  EXPECT_EQ(j["checks"]["matches_table_row"], true);
}

TEST(Catalog, ExportFlagsSymmetryDerivedEntries) {
  Invocation r = run({"catalog", "export", "10_124"});
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  bool saw_derived = false;
  for (const auto& e : j["hfk"]) {
    if (e["A"].get<int>() < 0) {
      EXPECT_EQ(e["symmetry_derived"], true);
      saw_derived = true;
    } else if (e["A"].get<int>() > 0) {
      EXPECT_EQ(e["symmetry_derived"], false);
    }
  }
  EXPECT_TRUE(saw_derived);
}

TEST(Catalog, UnknownEntry) { EXPECT_EQ(run({"catalog", "show", "10_999"}).code, 1); }

TEST(Catalog, ExportRoundTripsThroughCompute) {
  Invocation e = run({"catalog", "export", "trefoil"});
  ASSERT_EQ(e.code, 0);
  fs::path p = scratch_dir() / "trefoil-roundtrip.json";
  std::ofstream(p) << e.out;
  Invocation r = run({"compute", p.string(), "--tau"});
  EXPECT_EQ(r.out, "tau = -1\n");
}

TEST(VerifyTable, AllRowsPass) {
  Invocation r = run({"verify-table"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("18/18"), std::string::npos) << r.out;
}

TEST(Usage, UnknownSubcommand) { EXPECT_NE(run({"frobnicate"}).code, 0); }
