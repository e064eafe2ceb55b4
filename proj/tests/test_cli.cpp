#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "json.hpp"

#include "rop/hardcases.hpp"
#include "rop/io.hpp"
#include "rop/testers.hpp"

namespace rop {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun ropcheck(const std::string& args) {
  std::string cmd = std::string(ROPCHECK_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliRun r;
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ropcheck_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, CheckQ4IsReadMany) {
  std::string f = write("q4.txt", format_poly(q_n(4, FieldCtx(1009))));
  CliRun r = ropcheck("check " + f);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("READ_MANY", 0), 0u) << r.out;
  r = ropcheck("check --json " + f);
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "READ_MANY");
  EXPECT_EQ(j.at("witness_I").size(), 3u);
}

TEST_F(Cli, CheckExpandedFormulaIsRop) {
  ASSERT_EQ(ropcheck("gen rof --n 6 --seed 3 -o " + path("r.txt")).code, 0);
  std::ifstream in(path("r.txt"));
  Rof r = parse_rof(std::string(std::istreambuf_iterator<char>(in), {}));
  std::string f = write("p.txt", format_poly(r.expand()));
  CliRun out = ropcheck("check " + f);
  EXPECT_EQ(out.code, 0);
  EXPECT_EQ(out.out.rfind("ROP", 0), 0u) << out.out;
}

TEST_F(Cli, ErrorExitCodes) {
  EXPECT_EQ(ropcheck("check " + write("bad.txt", "field p=101 n=3\nx1 + + x9\n")).code, 2);
  EXPECT_EQ(ropcheck("check " + write("nohdr.txt", "x1 + x2\n")).code, 2);
  EXPECT_EQ(ropcheck("check " + path("missing.txt")).code, 2);
  EXPECT_EQ(ropcheck("check --bogus x").code, 2);
  EXPECT_EQ(ropcheck("").code, 2);
  std::string sq = write("sq.txt", "field p=101 n=2\nx1^2 + x2\n");
  EXPECT_EQ(ropcheck("check " + sq).code, 3);
  // --p must agree with the header.
  EXPECT_EQ(ropcheck("check --p 103 " + sq).code, 2);
  // Grid does not fit in GF(5).
  std::string small = write("small.txt", "field p=5 n=3\nx1*x2 + x3\n");
  EXPECT_EQ(ropcheck("blackbox --degree 5 " + small).code, 3);
  EXPECT_EQ(ropcheck("experiment trivariate-enum --p 11").code, 3);
}

TEST_F(Cli, BlackboxAndProperty) {
  ASSERT_EQ(ropcheck("gen rof --n 5 --p 100003 --seed 4 -o " + path("r.txt")).code, 0);
  CliRun r = ropcheck("blackbox " + path("r.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("YES", 0), 0u);
  r = ropcheck("property --json --delta 0.2 " + path("r.txt"));
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "YES");
  EXPECT_EQ(j.at("repeats"), property_test_repeats(5, 0.2));

  std::string q = write("q5.txt", format_poly(q_n(5, FieldCtx(100003))));
  r = ropcheck("blackbox --repeat 20 " + q);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("rejected ", 0), 0u) << r.out;
  r = ropcheck("property --corrupt 0.4 --delta 0.4 --seed 2 " + path("r.txt"));
  EXPECT_EQ(r.code, 1) << r.out;
}

TEST_F(Cli, SameSeedSameBytes) {
  std::string q = write("q5.txt", format_poly(q_n(5, FieldCtx(11677))));
  for (const char* cmd : {"blackbox --json --seed 9 ", "property --seed 9 ", "check --json "}) {
    EXPECT_EQ(ropcheck(cmd + q).out, ropcheck(cmd + q).out) << cmd;
  }
}

TEST_F(Cli, GenRoundTrips) {
  CliRun a = ropcheck("gen rof --n 8 --seed 7");
  CliRun b = ropcheck("gen rof --n 8 --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(format_rof(parse_rof(a.out)), a.out);

  CliRun q = ropcheck("gen qn --n 5 --p 101");
  EXPECT_EQ(parse_poly(q.out), q_n(5, FieldCtx(101)));

  CliRun m = ropcheck("gen random-multilinear --n 4 --seed 2");
  MPoly p = parse_poly(m.out);
  EXPECT_TRUE(p.is_multilinear());
  EXPECT_EQ(p.arity(), 4u);
  EXPECT_EQ(ropcheck("gen qn --n 0").code, 2);
  EXPECT_EQ(ropcheck("gen qn --n 3 --p 100").code, 2);
}

TEST_F(Cli, Experiments) {
  CliRun r = ropcheck("experiment qn-fraction --p 2 --n 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "p,n,samples,good_fraction,stderr\n2,4,16,1.000000,0.000000\n");

  CliRun t1 = ropcheck("experiment qn-fraction --p 101 --n 5 --samples 400 --threads 1");
  CliRun t3 = ropcheck("experiment qn-fraction --p 101 --n 5 --samples 400 --threads 3");
  EXPECT_EQ(t1.out, t3.out);

  std::string ml = write("ml.txt", "field p=101 n=3\n2*x1*x2*x3 + 5*x2 + 1\n");
  r = ropcheck("experiment tau --samples 500 --input " + ml);
  EXPECT_EQ(r.out, "p,n,samples,tau,stderr\n101,3,500,0.000000,0.000000\n");

  r = ropcheck("experiment trivariate-enum --p 3 --json");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("cases"), 6561);
  EXPECT_EQ(j.at("disagreements"), 0);
}

}  // namespace
}  // namespace rop
