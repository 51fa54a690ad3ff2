#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "osg/cli.hpp"
#include "schema_check.hpp"

namespace fs = std::filesystem;
using osg::cli::run;
using testing_support::schema_errors;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run osg_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("osg-cli-test-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, DocumentedExamples) {
  EXPECT_EQ(osg_run({"gw", "--n", "3", "--lambda", "1,1", "--mu", "5,2", "--nu", "3,0", "--d", "1"}).out, "1\n");
  EXPECT_EQ(osg_run({"certify", "--n", "3", "--method", "both"}).out, "UniqueZero (fm) / UniqueZero (replay)\n");
  EXPECT_EQ(osg_run({"mult", "--n", "3", "tau[0,0]*tau[4,3]"}).out, "tau[4,3]\n");
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"gw", "--n", "3"},
           {"gw", "--n", "3", "--lambda", "1,1", "--mu", "5,2", "--nu", "9,9", "--d", "1"},
           {"gw", "--n", "3", "--lambda", "x", "--mu", "5,2", "--nu", "3,0", "--d", "1"},
           {"mult", "--n", "3", "tau[1,1]^2"},
           {"mult", "--n", "3", "tau[9,9]"},
           {"mult", "--n", "2", "tau[1,0]"},
           {"basis", "--n", "3", "--format", "yaml"},
           {"pieri", "--n", "3", "--class", "2", "--with", "1,0"},
           {"check-star", "--n", "3", "--spec", "/nonexistent/spec.json"},
           {"table", "--n", "3", "--out", "a", "--load", "b"},
       }) {
    const auto r = osg_run(args);
    EXPECT_EQ(r.code, 2) << ::testing::PrintToString(args);
    EXPECT_TRUE(r.out.empty()) << r.out;
  }
}

TEST(Cli, ParseErrorPointsAtOffset) {
  const auto r = osg_run({"mult", "--n", "3", "tau[1,1]^2"});
  EXPECT_NE(r.err.find("offset 8"), std::string::npos);
  EXPECT_NE(r.err.find("        ^"), std::string::npos);
}

TEST(Cli, FormatsCarrySameContent) {
  const std::vector<std::string> base{"pieri", "--n", "3", "--class", "1", "--with", "5,4"};
  auto with = [&](const std::string& f) {
    auto a = base;
    a.insert(a.end(), {"--format", f});
    return osg_run(a);
  };
  EXPECT_EQ(with("text").out, "q*tau[5,-1] + q*tau[4,0]\n");
  const auto j = osg::json::parse(with("json").out);
  EXPECT_EQ(j["text"], "q*tau[5,-1] + q*tau[4,0]");
  EXPECT_EQ(j["case"], "top");
  EXPECT_EQ(with("latex").out, "\\tau_{1,0} \\star \\tau_{5,4} = q \\tau_{5,-1} + q \\tau_{4,0}\n");
}

TEST(Cli, CheckStarExitCodes) {
  const fs::path dir = scratch();
  std::ofstream(dir / "zero.json") << R"({"n":3,"mode":"per-pair","entries":[]})";
  std::ofstream(dir / "bad.json") << R"({"n":3,"mode":"per-pair","entries":[{"lambda":[5,1],"mu":[0,0],"a":"1/2"}]})";
  std::ofstream(dir / "broken.json") << R"({"n":3,"entries":[{"lambda":[5,1]}]})";
  EXPECT_EQ(osg_run({"check-star", "--n", "3", "--spec", (dir / "zero.json").string()}).code, 0);
  const auto bad = osg_run({"check-star", "--n", "3", "--spec", (dir / "bad.json").string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("fails\n", 0), 0u);
  EXPECT_EQ(osg_run({"check-star", "--n", "4", "--spec", (dir / "zero.json").string()}).code, 2);
  EXPECT_EQ(osg_run({"check-star", "--n", "3", "--spec", (dir / "broken.json").string()}).code, 2);
  fs::remove_all(dir);
}

TEST(Cli, CertifyInconclusiveUnderTinyCap) {
  const auto r = osg_run({"certify", "--n", "4", "--max-constraints", "3", "--format", "json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, TableCacheRoundTrip) {
  const fs::path dir = scratch();
  for (int n : {3, 4}) {
    const std::string path = (dir / ("t" + std::to_string(n) + ".json")).string();
    ASSERT_EQ(osg_run({"table", "--n", std::to_string(n), "--out", path}).code, 0);
    const auto r = osg_run({"table", "--load", path, "--revalidate", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(osg::json::parse(r.out)["bit_identical"], true);
  }
  fs::remove_all(dir);
}

TEST(Cli, DefaultCacheDirectory) {
  const fs::path dir = scratch() / "cache";
  ::setenv("OSG_CACHE_DIR", dir.c_str(), 1);
  EXPECT_EQ(osg_run({"gw", "--n", "3", "--lambda", "1,0", "--mu", "1,0", "--nu", "2,0", "--d", "0"}).out, "1\n");
  EXPECT_TRUE(fs::exists(dir / "table-n3.json"));
  // A second run reads the cache; a corrupted cache is rebuilt with a warning.
  EXPECT_EQ(osg_run({"gw", "--n", "3", "--lambda", "1,0", "--mu", "1,0", "--nu", "2,0", "--d", "0"}).out, "1\n");
  std::ofstream(dir / "table-n3.json") << "{not json";
  const auto r = osg_run({"gw", "--n", "3", "--lambda", "1,0", "--mu", "1,0", "--nu", "2,0", "--d", "0"});
  EXPECT_EQ(r.out, "1\n");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  ::unsetenv("OSG_CACHE_DIR");
  fs::remove_all(dir.parent_path());
}

TEST(Cli, JsonOutputsMatchSchema) {
  const fs::path dir = scratch();
  const std::string cert = (dir / "cert.json").string();
  const std::string table = (dir / "t3.json").string();
  std::ofstream(dir / "spec.json") << R"({"n":3,"mode":"per-mu","entries":[{"mu":[1,1],"a":"-2"}]})";
  const std::vector<std::vector<std::string>> commands{
      {"basis", "--n", "4"},
      {"basis", "--n", "4", "--degree", "6"},
      {"mult", "--n", "3", "tau[5,-1]*tau[5,-1] + 2*q*tau[1,0]"},
      {"pieri", "--n", "4", "--class", "11", "--with", "7,5"},
      {"gw", "--n", "3", "--lambda", "5,-1", "--mu", "5,-1", "--nu", "2,0", "--d", "1"},
      {"verify", "--n", "3", "--suite", "lemma23"},
      {"verify", "--n", "3", "--suite", "assoc"},
      {"verify", "--n", "3", "--suite", "pairing"},
      {"verify", "--n", "3", "--suite", "betti"},
      {"verify", "--n", "3", "--suite", "negativity"},
      {"certify", "--n", "3", "--method", "both", "--emit-certificate", cert},
      {"certify", "--n", "3", "--mode", "per-mu"},
      {"check-star", "--n", "3", "--spec", (dir / "spec.json").string()},
      {"table", "--n", "3", "--out", table},
      {"table", "--load", table},
  };
  for (auto args : commands) {
    args.insert(args.end(), {"--format", "json"});
    const auto r = osg_run(args);
    EXPECT_LE(r.code, 1) << r.err;
    EXPECT_EQ(schema_errors("cli-output.schema.json", r.out), "") << ::testing::PrintToString(args);
  }
  std::ifstream c(cert), t(table), s(dir / "spec.json");
  std::stringstream cs, ts, ss;
  cs << c.rdbuf();
  ts << t.rdbuf();
  ss << s.rdbuf();
  EXPECT_EQ(schema_errors("certificate.schema.json", cs.str()), "");
  EXPECT_EQ(schema_errors("table.schema.json", ts.str()), "");
  EXPECT_EQ(schema_errors("spec.schema.json", ss.str()), "");
  EXPECT_NE(schema_errors("cli-output.schema.json", R"({"command":"gw","n":3})"), "");
  const std::string gw = R"({"command":"gw","n":3,"lambda":[1,1],"mu":[5,2],"nu":[3,0],"d":1,"value":"VALUE"})";
  auto gw_with = [&](const std::string& v) { return std::string(gw).replace(gw.find("VALUE"), 5, v); };
  EXPECT_EQ(schema_errors("cli-output.schema.json", gw_with("-3/4")), "");
  EXPECT_NE(schema_errors("cli-output.schema.json", gw_with("1.5")), "");
  EXPECT_NE(schema_errors("cli-output.schema.json", gw_with("1/x")), "");
  fs::remove_all(dir);
}
