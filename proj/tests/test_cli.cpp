#include <gtest/gtest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using pcf::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "pcf");
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> v;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) v.push_back(cur);
  if (!line.empty() && line.back() == ',') v.emplace_back();
  return v;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST(CliEval, GaussianPoint) {
  Outcome o = call({"eval", "--a", "-0.5", "--z", "1,0"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto ls = lines(o.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "a,z_re,z_im,u_re,u_im,method,est_error,flags");
  auto f = fields(ls[1]);
  ASSERT_EQ(f.size(), 8u);
  EXPECT_NEAR(std::stod(f[3]), 0.778800783071, 1e-12);
  EXPECT_EQ(f[4], "0");
  EXPECT_EQ(f[5], "maclaurin");
}

TEST(CliEval, RegionRuleAndForcedMethod) {
  Outcome o = call({"eval", "--a", "25", "--z", "1,0"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto f = fields(lines(o.out)[1]);
  EXPECT_EQ(f[5], "airy");
  EXPECT_TRUE(std::isfinite(std::stod(f[3])));

  Outcome g = call({"eval", "--a", "0.3", "--z", "1,0.5", "--method", "integral"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(fields(lines(g.out)[1])[5], "integral");
}

TEST(CliEval, JsonRecord) {
  Outcome o = call({"eval", "--a", "0", "--z", "0,0", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto j = nlohmann::json::parse(o.out);
  for (const char* key : {"a", "z_re", "z_im", "u_re", "u_im", "method", "est_error", "flags"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.size(), 8u);
  EXPECT_NEAR(j["u_re"].get<double>(), 1.2163, 1e-4);
  EXPECT_EQ(j["method"], "maclaurin");
}

TEST(CliEval, NegativeArgumentsAndConnection) {
  Outcome o = call({"eval", "--a", "-3", "--z", "-1,-2"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto f = fields(lines(o.out)[1]);
  EXPECT_EQ(f[5], "connection");
  EXPECT_NEAR(std::stod(f[3]), 18.160602399132596, 1e-11);
}

TEST(CliEval, ExitCodes) {
  EXPECT_EQ(call({"eval", "--a", "100", "--z", "1"}).code, 2);
  EXPECT_EQ(call({"eval", "--a", "0", "--z", "0,60"}).code, 2);
  Outcome bad = call({"eval", "--a", "x", "--z", "1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(bad.err.empty());
  Outcome missing = call({"eval", "--a", "1"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("--z"), std::string::npos);
  EXPECT_EQ(call({"eval", "--a", "1", "--z", "1,2,3"}).code, 1);
  EXPECT_EQ(call({"eval", "--a", "1", "--z", "1", "--method", "fast"}).code, 1);
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(CliMap, RecurrenceGridRowCount) {
  const std::string path = temp_path("pcf_map_recurrence.csv");
  Outcome o = call({"map", "--grid", "-30,30,50:0,30,50", "--check", "recurrence", "--out", path});
  ASSERT_EQ(o.code, 0) << o.err;
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto ls = lines(buf.str());
  ASSERT_EQ(ls.size(), 2501u);
  EXPECT_EQ(ls[0], "a,z_re,z_im,u_re,u_im,method,est_error,flags,residual,method2");
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_EQ(fields(ls[i]).size(), 10u) << ls[i];
  std::filesystem::remove(path);
}

TEST(CliMap, AgreementSeamAndDeterminism) {
  const std::vector<std::string> args = {"map", "--grid", "21,29,3:17,22,4", "--check", "agreement",
                                         "--m1", "airy", "--m2", "poincare", "--arg", "0.4"};
  Outcome a = call(args), b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto ls = lines(a.out);
  ASSERT_EQ(ls.size(), 13u);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    auto f = fields(ls[i]);
    EXPECT_LE(std::stod(f[8]), 5e-13) << ls[i];
    EXPECT_GE(std::stod(f[8]), 0.0) << ls[i];
  }
}

TEST(CliMap, Errors) {
  EXPECT_EQ(call({"map", "--grid", "0,1,0:0,1,3"}).code, 1);
  EXPECT_EQ(call({"map", "--grid", "0,1,2"}).code, 1);
  EXPECT_EQ(call({"map", "--grid", "0,1,2:0,1,2", "--check", "other"}).code, 1);
  EXPECT_EQ(call({"map", "--grid", "0,1,2:0,1,2", "--check", "agreement", "--m1", "connection"}).code, 1);
  EXPECT_EQ(call({"map", "--grid", "0,1,2:0,1,2", "--out", "/nonexistent-dir/x.csv"}).code, 4);
}

TEST(CliSelftest, PrincipalDomainIsReproducible) {
  const std::vector<std::string> args = {"selftest", "--samples", "100", "--seed", "7", "--domain", "principal"};
  Outcome a = call(args), b = call(args);
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_NE(a.out.find("result: PASS"), std::string::npos);
  EXPECT_NE(a.out.find("domain: principal"), std::string::npos);
  // Only the timing-free report is printed, so the runs match byte for byte.
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(call({"selftest", "--domain", "half"}).code, 1);
  EXPECT_EQ(call({"selftest", "--samples", "0"}).code, 1);
}

TEST(CliTables, InfoAndWrite) {
  Outcome info = call({"tables", "info"});
  ASSERT_EQ(info.code, 0) << info.err;
  EXPECT_NE(info.out.find("s_max: 16"), std::string::npos);
  const std::string path = temp_path("pcf_tables_test.bin");
  EXPECT_EQ(call({"tables", "write", "--out", path}).code, 0);
  EXPECT_GT(std::filesystem::file_size(path), 17u * 2000u * 32u);
  std::filesystem::remove(path);
  EXPECT_EQ(call({"tables", "write"}).code, 1);
  EXPECT_EQ(call({"tables", "write", "--out", "/nonexistent-dir/t.bin"}).code, 4);
}

TEST(CliFormat, ShortestRoundTrip) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(mant(gen), ex(gen));
    const std::string s = pcf::cli::format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, x) << s;
  }
  EXPECT_EQ(pcf::cli::format_double(0.1), "0.1");
  EXPECT_EQ(pcf::cli::format_double(1e300), "1e+300");
}
