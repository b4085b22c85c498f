#include "liesym_cli/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "liesym/errors.hpp"

namespace liesym::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string without_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.find("\"generated_at\"") == std::string::npos) kept += line + "\n";
  }
  return kept;
}

nlohmann::json report(const Outcome& o) { return nlohmann::json::parse(o.out); }

TEST(Cli, Exponents) {
  Outcome o = call({"exponents", "--a", "-1", "--r", "2"});
  ASSERT_EQ(o.code, kVerified) << o.err;
  auto j = report(o);
  EXPECT_EQ(j["c1"], -7);
  EXPECT_EQ(j["c2"], -3);
  auto k = report(call({"exponents", "--a", "3", "--r", "0.5"}));
  EXPECT_EQ(k["exact"]["c1"], "8/3");
}

TEST(Cli, CheckSymmetryExitCodes) {
  Outcome ok = call({"check-symmetry", "--preset", "gss", "--field", "X", "--samples", "200"});
  EXPECT_EQ(ok.code, kVerified);
  EXPECT_EQ(report(ok)["admitted"], true);
  Outcome bad = call({"check-symmetry", "--preset", "gss", "--c1", "-6.9"});
  EXPECT_EQ(bad.code, kRefuted);
  EXPECT_EQ(report(bad)["verdict"], "not_admitted");
  Outcome custom = call({"check-symmetry", "--xi1", "0", "--xi2", "1", "--phi", "0"});
  EXPECT_EQ(custom.code, kVerified);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"frobnicate"}).code, kUsage);
  EXPECT_EQ(call({"exponents", "--a", "-1"}).code, kUsage);
  EXPECT_EQ(call({"exponents", "--a", "-1", "--r", "2", "--bogus"}).code, kUsage);
  EXPECT_EQ(call({"exponents", "--a", "0", "--r", "2"}).code, kUsage);
  EXPECT_EQ(call({"exponents", "--a", "x", "--r", "2"}).code, kUsage);
  EXPECT_EQ(call({"check-symmetry", "--field", "X", "--xi1", "x"}).code, kUsage);
  EXPECT_EQ(call({"region", "--lambda", "-1"}).code, kUsage);
  EXPECT_EQ(call({"reduce", "--preset", "gss", "--r", "1"}).code, kUsage);
  Outcome help = call({"--help"});
  EXPECT_EQ(help.code, kVerified);
  EXPECT_NE(help.out.find("check-symmetry"), std::string::npos);
}

TEST(Cli, ReduceAndWeakCs) {
  Outcome r = call({"reduce", "--symbolic"});
  ASSERT_EQ(r.code, kVerified) << r.err;
  EXPECT_EQ(report(r)["residual_a"], "0");
  EXPECT_EQ(report(r)["split_exact"], true);
  Outcome w = call({"weak-cs", "--preset", "gss"});
  ASSERT_EQ(w.code, kVerified) << w.err;
  auto j = report(w);
  EXPECT_EQ(j["stages"].size(), 4u);
  EXPECT_EQ(j["verdicts"].size(), 3u);
  EXPECT_EQ(call({"weak-cs", "--preset", "gss", "--c1", "-6.9"}).code, kRefuted);
}

TEST(Cli, TransformAndRegion) {
  Outcome t = call({"transform", "--lambda", "0.5", "--x", "0.4", "--y", "-0.1"});
  ASSERT_EQ(t.code, kVerified) << t.err;
  EXPECT_EQ(report(t)["point"]["agree"], true);
  EXPECT_EQ(report(t)["symbolically_equal"], true);
  Outcome g = call({"region", "--lambda", "1"});
  ASSERT_EQ(g.code, kVerified);
  EXPECT_EQ(report(g)["mismatches"], 0);
}

TEST(Cli, ResidualGridCsvAndTrailer) {
  Outcome o = call({"residual-grid", "--preset", "gss", "--solution", "family", "--lambda", "1", "--nx", "20",
                    "--ny", "20"});
  ASSERT_EQ(o.code, kVerified) << o.err;
  std::istringstream in(o.out);
  std::vector<ResidualNode> nodes = parse_csv(in);
  EXPECT_EQ(nodes.size(), 400u);
  std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto trailer = nlohmann::json::parse(rest);
  double sup = 0;
  for (const auto& n : nodes) {
    if (n.in_domain) sup = std::max(sup, n.residual);
  }
  EXPECT_EQ(sup, trailer["sup_residual"].get<double>());
  EXPECT_EQ(trailer["verdict"], "solves");
}

TEST(Cli, OutputFlagWritesFile) {
  std::string path = ::testing::TempDir() + "liesym_region.json";
  Outcome o = call({"region", "--lambda", "2", "--output", path});
  ASSERT_EQ(o.code, kVerified);
  EXPECT_TRUE(o.out.empty());
  std::FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::fclose(f);
  std::remove(path.c_str());
}

TEST(Cli, SeedFromEnvironment) {
  auto base = without_timestamp(call({"check-symmetry", "--preset", "gss", "--c1", "-6.9", "--seed", "7"}).out);
  ::setenv("LIESYM_SEED", "7", 1);
  auto from_env = without_timestamp(call({"check-symmetry", "--preset", "gss", "--c1", "-6.9"}).out);
  ::setenv("LIESYM_SEED", "abc", 1);
  int bad = call({"region", "--lambda", "1"}).code;
  ::unsetenv("LIESYM_SEED");
  EXPECT_EQ(base, from_env);
  EXPECT_EQ(bad, kUsage);
}

TEST(Cli, DeterministicModuloTimestamp) {
  std::vector<std::string> args{"weak-cs", "--preset", "gss", "--seed", "3"};
  Outcome a = call(args);
  Outcome b = call(args);
  EXPECT_EQ(without_timestamp(a.out), without_timestamp(b.out));
  EXPECT_NE(a.out.find("\"generated_at\""), std::string::npos);
}

TEST(Csv, EmitFormat) {
  ResidualField f;
  f.nodes = {{0.0, 0.0, false, 0.0, 0.0}, {1.0, 0.0, true, 0.1, 1e-17},
             {0.0, 1.0, true, 2.0, 0.0},  {1.0, 1.0, false, 0.0, 0.0}};
  std::ostringstream out;
  emit_csv(f, out);
  EXPECT_EQ(out.str(),
            "x,y,in_domain,u,residual\n"
            "0,0,0,,\n"
            "1,0,1,0.10000000000000001,1.0000000000000001e-17\n"
            "0,1,1,2,0\n"
            "1,1,0,,\n");
  std::istringstream in(out.str());
  auto back = parse_csv(in);
  ASSERT_EQ(back.size(), 4u);
  EXPECT_EQ(back[1].u, 0.1);
  EXPECT_FALSE(back[3].in_domain);
}

TEST(Csv, RejectsMalformed) {
  std::istringstream no_header("1,2,3\n");
  EXPECT_THROW(parse_csv(no_header), liesym::ParseError);
  std::istringstream bad("x,y,in_domain,u,residual\n1,2,0,5,\n");
  EXPECT_THROW(parse_csv(bad), liesym::ParseError);
}

TEST(Binary, ExitCodesAndDeterminism) {
  auto capture = [](const std::string& args, int& code) {
    std::string cmd = std::string(LIESYM_CLI_PATH) + " " + args + " 2>/dev/null";
    std::FILE* p = ::popen(cmd.c_str(), "r");
    std::string text;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) text.append(buf, n);
    int status = ::pclose(p);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return text;
  };
  int c1 = 0, c2 = 0;
  std::string a = capture("check-symmetry --preset gss --c1 -6.9", c1);
  std::string b = capture("check-symmetry --preset gss --c1 -6.9", c2);
  EXPECT_EQ(c1, 1);
  EXPECT_EQ(without_timestamp(a), without_timestamp(b));
  capture("exponents --a", c1);
  EXPECT_EQ(c1, 2);
}

}  // namespace
}  // namespace liesym::cli
