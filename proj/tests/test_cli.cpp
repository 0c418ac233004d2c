#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace multdyn;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "multdyn");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

}  // namespace

TEST(Cli, MultdepJsonIsExact) {
  auto r = run({"multdep", "4", "8", "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"status\":\"dependent\",\"k\":[3,-2],\"rank\":1}\n");
}

TEST(Cli, MultdepStatuses) {
  EXPECT_EQ(run_json({"multdep", "2", "3"})["status"], "independent");
  auto u = run_json({"multdep", "5", "0"});
  EXPECT_EQ(u["status"], "undefined");
  EXPECT_TRUE(u["k"].is_null());
  EXPECT_EQ(run_json({"multdep", "-3", "9"})["k"], Json::parse("[2,-1]"));
}

TEST(Cli, ClassifyCubicExample) {
  auto r = run({"classify", "X^3-6*i*X^2-9*X+4*i", "--m", "2", "--domain", "qi"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("SquareIterateExceptional"), std::string::npos);
  EXPECT_NE(r.out.find("X^4 - 9*i*X^3 - 27*X^2 + 30*i*X + 9"), std::string::npos);
  auto j = run_json({"classify", "X^3-6*i*X^2-9*X+4*i", "--m", "2", "--domain", "qi"});
  EXPECT_EQ(j["case"], "SquareIterateExceptional");
  EXPECT_EQ(j["witness"]["s"], 1);
}

TEST(Cli, CountSummaryAndCsv) {
  auto r = run({"count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("count 3"), std::string::npos);
  EXPECT_NE(r.out.find("m_1,m_2,k_1,k_2\n1,1,1,-1\n2,2,1,-1\n3,3,1,-1\n"), std::string::npos);
  auto csv = run({"--csv", "count", "--f", "X^2+2", "--f", "X^2+2", "--x", "0", "--N", "3"});
  EXPECT_EQ(csv.out, "m_1,m_2,k_1,k_2\n1,1,1,-1\n2,2,1,-1\n3,3,1,-1\n");
  auto j = run_json({"count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "3", "--threads", "3"});
  EXPECT_EQ(j["count"], 3);
  EXPECT_EQ(j["certificates"].size(), 3u);
}

TEST(Cli, CountOutputIndependentOfThreads) {
  auto a = run({"--csv", "--threads", "1", "count", "--f", "X^2+1", "--x", "1", "--n", "3", "--N", "4"});
  auto b = run({"--csv", "--threads", "4", "count", "--f", "X^2+1", "--x", "1", "--n", "3", "--N", "4"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
  auto unknown = run({"frobnicate", "1"});
  EXPECT_EQ(unknown.code, 64);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"orbit", "X+1"}).code, 1);
  EXPECT_EQ(run({"rank", "2", "0"}).code, 1);
  EXPECT_EQ(run({"--count-budget", "100", "count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "50"}).code, 2);
  auto budget = run({"--bit-cap", "64", "orbit", "X^2+2", "--N", "20"});
  EXPECT_EQ(budget.code, 2);
  EXPECT_NE(budget.err.find("largest completed"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ConfigFile) {
  const std::string path = ::testing::TempDir() + "/multdyn_config.json";
  {
    std::ofstream(path) << R"({"count_budget": 100})";
  }
  EXPECT_EQ(run({"--config", path, "count", "--f", "X^2+2", "--x", "0", "--n", "2", "--N", "50"}).code, 2);
  // flags override the file
  EXPECT_EQ(run({"--config", path, "--count-budget", "100000", "count", "--f", "X^2+2", "--x", "0", "--n", "2",
                 "--N", "10"})
                .code,
            0);
  EXPECT_EQ(run({"--config", path + ".missing", "rank", "2"}).code, 1);
}

TEST(Cli, Subcommands) {
  EXPECT_EQ(run({"orbit", "X^2+2", "--x", "0", "--N", "4"}).out, "1 2\n2 6\n3 38\n4 1446\n");
  EXPECT_EQ(run_json({"rank", "2", "3", "6"})["rank"], 2);
  EXPECT_EQ(run_json({"--domain", "qi", "rank", "i", "5"})["rank"], 0);
  auto ro = run_json({"rank-one", "9", "1/3"});
  EXPECT_EQ(ro["l"], -2);
  EXPECT_TRUE(ro["mixed_sign"]);
  auto lv = run_json({"leveque", "X^2*(X-1)^3*(X-2)", "--m", "3"});
  EXPECT_EQ(lv["sorted"], Json::parse("[3,3,1]"));
  EXPECT_TRUE(lv["satisfies"]);
  auto ex = run_json({"exceptional", "X^2*(X-1)^3*(X-2)", "(X-1)*(X-2)*(X-3)*(X-4)"});
  EXPECT_EQ(ex["E_f"], Json::parse("[1,2]"));
  EXPECT_EQ(ex["pairs"], Json::parse("[[1,1],[1,2]]"));
  EXPECT_EQ(run({"hat", "4*X*(X-1)^2", "--l", "2"}).out, "2*X^3 - 2*X\n");
  EXPECT_EQ(run({"hat", "2*X*(X-1)^2", "--l", "2"}).code, 1);
  EXPECT_EQ(run({"verify-semiconj", "X*(X-1)^2", "X^3-X", "--l", "2", "--N", "3"}).out, "holds\n");
  EXPECT_EQ(run({"verify-semiconj", "X*(X-1)^2", "X^3+X", "--l", "2"}).out, "fails\n");
  auto ci = run_json({"common-iterate", "X^2+2", "X^4+4*X^2+6"});
  EXPECT_EQ(ci["n"], 2);
  EXPECT_FALSE(run_json({"common-iterate", "X^2", "X^3"})["found"]);
  EXPECT_EQ(run_json({"standard-pair", "--kind", "fifth"})["g1"], "3*X^4 - 4*X^3");
  EXPECT_EQ(run({"standard-pair", "--kind", "first", "--m", "4", "--r", "2"}).code, 1);
  auto sc = run_json({"scan-solutions", "X^2", "2*X^2-1", "--H", "50"});
  EXPECT_NE(std::find(sc["solutions"].begin(), sc["solutions"].end(), Json::parse("[41,29]")), sc["solutions"].end());
  auto rd = run_json({"rds-check", "X^2+2", "--x", "0", "--N", "8"});
  EXPECT_TRUE(rd["divisibility"]);
  EXPECT_TRUE(rd["rigid"]);
  auto rs = run_json({"rds-check", "--seq", "2,4,7"});
  EXPECT_FALSE(rs["divisibility"]);
  EXPECT_EQ(rs["divisibility_violation"], Json::parse("[1,3]"));
  auto pp = run_json({"ppd", "X^2+2", "--x", "0", "--N", "4"});
  EXPECT_EQ(pp["terms"][3]["primitive_part"], "241");
  EXPECT_EQ(run_json({"sqfree", "--int", "72"})["value"], "6");
  EXPECT_EQ(run_json({"sqfree", "4*(X-1)^2"})["radical"], "X - 1");
  auto abc = run_json({"abc-check", "--trials", "30", "--seed", "5"});
  EXPECT_EQ(abc["failures"], 0);
  EXPECT_EQ(abc["trials"], 30);
  EXPECT_EQ(run({"dickson", "--m", "3", "--a", "1"}).out, "X^3 - 3*X\n");
  EXPECT_EQ(run({"twist", "X^2", "--alpha", "2"}).out, "1/2*X^2\n");
  EXPECT_EQ(run({"iterate", "X^2+2", "--n", "2"}).out, "X^4 + 4*X^2 + 6\n");
  EXPECT_EQ(run({"decompose", "X^6+X+1"}).out, "indecomposable\n");
  EXPECT_EQ(run({"bt-shape", "(X+1)^2", "X^2", "--phi", "X", "--f1", "X^2", "--g1", "X^2", "--lambda", "X+1"}).out,
            "holds\n");
  auto fam = run_json({"family", "X*(X+1)^2", "X^3+X", "--f-hat", "X^3+X", "--g-hat", "X^3+X", "--l", "2", "--x",
                       "4", "--R", "2"});
  EXPECT_EQ(fam["pairs"].size(), 2u);
}

TEST(Cli, AbcSeedIsReproducible) {
  auto a = run({"abc-check", "--trials", "20", "--seed", "9"});
  auto b = run({"abc-check", "--trials", "20", "--seed", "9"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, PrintedPolynomialsReparse) {
  auto check = [](const std::string& domain, const std::string& text) {
    if (domain == "qi") {
      auto p = parse_polynomial<GaussianRational>(text);
      EXPECT_EQ(to_string(parse_polynomial<GaussianRational>(to_string(p))), to_string(p));
    } else {
      auto p = parse_polynomial<Rational>(text);
      EXPECT_EQ(parse_polynomial<Rational>(to_string(p)), p) << text;
    }
  };
  auto cl = run_json({"--domain", "qi", "classify", "X^3-6*i*X^2-9*X+4*i", "--m", "2"});
  check("qi", cl["iterate"]);
  check("qi", cl["witness"]["p"]);
  auto d = run_json({"decompose", "X^4+4*X^2+6"});
  for (const auto& e : d["decompositions"]) {
    auto g = parse_polynomial<Rational>(e["g"].get<std::string>());
    auto h = parse_polynomial<Rational>(e["h"].get<std::string>());
    EXPECT_EQ(compose(g, h), parse_polynomial<Rational>("X^4+4*X^2+6"));
  }
  for (const char* kind : {"first", "second", "third", "fifth"}) {
    auto sp = run_json({"standard-pair", "--kind", kind, "--m", "3", "--n", "2", "--r", "1", "--a", "3/2", "--b",
                        "-2", "--p", "X+1"});
    check("q", sp["f1"]);
    check("q", sp["g1"]);
  }
  auto sq = run_json({"--domain", "qi", "sqfree", "(X-i)^2*(X+3/2)"});
  for (const auto& p : sq["parts"]) check("qi", p["g"]);
  check("q", run_json({"iterate", "1/3*X^3 - 2/7*X", "--n", "2"})["result"]);
}

TEST(Cli, NegativePositionalsAreValues) {
  EXPECT_EQ(run_json({"rank", "4", "8", "-3"})["rank"], 1);
  EXPECT_EQ(run_json({"rank", "-2", "3"})["rank"], 2);
}
