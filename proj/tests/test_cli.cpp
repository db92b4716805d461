#include "gkz/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using gkz::cli::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = gkz::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  return json::parse(run(std::move(args)).out);
}

std::filesystem::path scratch(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("gkz_cli_test_" + name);
}

const std::vector<std::string> QUADRANT{"-A", "1 1 0; 0 1 1", "-b", "1,-1"};

std::vector<std::string> with(std::string command, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{std::move(command)};
  args.insert(args.end(), QUADRANT.begin(), QUADRANT.end());
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

} // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"sres", "-j", "0", "-A", "1"}).code, 2);
}

TEST(Cli, InvalidMatrixExitsTwoWithDiagnosis) {
  auto r = run({"validate", "-A", "2 0; 0 2", "--json"});
  EXPECT_EQ(r.code, 2);
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["error"]["kind"], "NotFullLattice");
  EXPECT_EQ(doc["sections"]["validate"]["ok"], false);
  EXPECT_NE(r.err.find("NotFullLattice"), std::string::npos);
  EXPECT_EQ(r.err.find("NotFullLattice: NotFullLattice"), std::string::npos);

  EXPECT_EQ(run({"validate", "-A", "1 -1"}).code, 2);
  EXPECT_EQ(run({"validate", "-A", "1 0; 0 0"}).code, 2);
}

TEST(Cli, ParseErrorsCarryPositions) {
  auto r = run({"validate", "-A", "1 1 x"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("-A: line 1, column 5"), std::string::npos) << r.err;

  auto b = run({"sres", "-A", "1 1 0; 0 1 1", "-b", "1,1/0"});
  EXPECT_EQ(b.code, 2);

  auto ragged = run({"validate", "-A", "1 1 0; 0 1"});
  EXPECT_EQ(ragged.code, 2);
}

TEST(Cli, InputChecks) {
  EXPECT_EQ(run(with("sres", {"-b", "1"})).code, 2);
  EXPECT_EQ(run_json(with("border", {"--face", "2"}))["error"]["kind"], "NotAFace");
  EXPECT_EQ(run_json(with("qdeg", {"--tau", "4"}))["error"]["kind"], "IndexOutOfRange");
  EXPECT_EQ(run_json(with("contiguity", {"-j", "4"}))["error"]["kind"], "IndexOutOfRange");
  EXPECT_EQ(run_json(with("export", {"--dialect", "maple"}))["error"]["kind"], "UnsupportedDialect");
  EXPECT_EQ(run_json(with("toric-ideal", {"--order", "deglex"}))["error"]["kind"], "ParseError");
  EXPECT_EQ(run_json(with("export", {"--payload", "contiguity"}))["error"]["kind"], "UnsupportedInput");
}

TEST(Cli, SresSection) {
  auto doc = run_json(with("sres"));
  const auto &s = doc["sections"]["sres"];
  EXPECT_EQ(s["strongly_resonant"], true);
  EXPECT_EQ(s["isomorphic"], false);
  EXPECT_EQ(s["statement"], "not isomorphic; witnesses j = 2 (k=1), j = 3 (k=1)");
  ASSERT_EQ(s["per_column"].size(), 3u);
  EXPECT_EQ(s["per_column"][0]["strongly_resonant"], false);
  EXPECT_EQ(s["per_column"][1]["witness"]["k"], 1);
}

TEST(Cli, TextOutputs) {
  auto r = run(with("toric-ideal"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("d1*d3-d2"), std::string::npos);

  auto v = run({"validate", "-A", "2 3"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("validate"), std::string::npos);
}

TEST(Cli, ExportPrintsRawScript) {
  auto r = run(with("export", {"--payload", "contiguity", "-j", "2"}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("-- Contiguity morphism", 0), 0u);
  EXPECT_NE(r.out.find("f = map(M1, M0, matrix{{d2}});"), std::string::npos);

  auto ek = run(with("export"));
  auto G = gkz::validate(gkz::IntMatrix{{1, 1, 0}, {0, 1, 1}});
  EXPECT_EQ(ek.out, gkz::export_script("macaulay2", gkz::ek_complex(G, {gkz::Rat(1), gkz::Rat(-1)})));
}

TEST(Cli, ReportRoundTripsThroughInput) {
  auto first = run(with("report", {"--tau", "2", "--json"}));
  ASSERT_EQ(first.code, 0) << first.err;
  auto path = scratch("report.json");
  {
    std::ofstream f(path);
    f << first.out;
  }
  auto second = run({"report", "--input", path.string(), "--json"});
  EXPECT_EQ(second.code, 0);
  EXPECT_EQ(second.out, first.out);
  std::filesystem::remove(path);
}

TEST(Cli, MatrixInputFileAndOutFile) {
  auto in = scratch("matrix.txt"), out = scratch("out.json");
  {
    std::ofstream f(in);
    f << "# cusp\n2 3\n";
  }
  auto r = run({"faces", "--input", in.string(), "--json", "--out", out.string()});
  EXPECT_EQ(r.code, 0);
  std::ifstream f(out);
  auto doc = json::parse(f);
  EXPECT_EQ(doc["sections"]["faces"].size(), 2u);
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST(Cli, JsonInputRejectsUnknownKeys) {
  auto in = scratch("bad.json");
  {
    std::ofstream f(in);
    f << R"({"A": [[2, 3]], "beta": ["1/2"], "zzz": 1})";
  }
  auto r = run({"sres", "--input", in.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("zzz"), std::string::npos);

  {
    std::ofstream f(in);
    f << "{\"A\": [[2, 3]],\n \"beta\": [}";
  }
  auto m = run({"sres", "--input", in.string()});
  EXPECT_EQ(m.code, 2);
  EXPECT_NE(m.err.find("line 2"), std::string::npos) << m.err;
  std::filesystem::remove(in);
}

TEST(Cli, ShiftSection) {
  auto doc = run_json(with("shift", {"--tau", "2", "--tau", "1,2,3"}));
  const auto &s = doc["sections"]["shift"];
  EXPECT_EQ(s["minimal_full"], 1);
  ASSERT_EQ(s["partial"].size(), 2u);
  EXPECT_EQ(s["partial"][0]["k"], 2);
  EXPECT_EQ(s["partial"][1]["k"], 2);
}
