#include "sdq/cli.hpp"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace sdq {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "sdq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  return std::string(SDQ_TEST_TMPDIR) + "/cli_test_" + name;
}

TEST(Cli, QuantizeWritesTwoColumns) {
  std::ofstream(tmp("y.txt")) << "0.4\n0.4\n0.4\n";
  const CliRun r =
      run({"quantize", "--order", "1", "--delta", "1", "--input", tmp("y.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  // Hand run of the first-order loop: states 0.4, -0.2, 0.2.
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "q,u");
  const double q[] = {0, 1, 0};
  const double u[] = {0.4, -0.2, 0.2};
  for (int i = 0; i < 3; ++i) {
    ASSERT_TRUE(std::getline(in, line));
    const auto comma = line.find(',');
    EXPECT_EQ(std::stod(line.substr(0, comma)), q[i]);
    EXPECT_NEAR(std::stod(line.substr(comma + 1)), u[i], 1e-15);
  }
  EXPECT_FALSE(std::getline(in, line));
}

TEST(Cli, GenMatrixIsReadableFixture) {
  const CliRun r = run({"gen", "--m", "4", "--n", "6", "--ensemble",
                        "rademacher", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const Matrix a = read_matrix(in);
  EXPECT_EQ(a.rows(), 4u);
  EXPECT_EQ(a.cols(), 6u);
  for (double v : a.data()) EXPECT_EQ(std::abs(v), 1.0);
}

TEST(Cli, GenSignal) {
  const CliRun r = run({"gen", "--kind", "signal", "--n", "10", "--s", "3",
                        "--floor", "0.5", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const Vector x = read_vector(in);
  ASSERT_EQ(x.size(), 10u);
  int nz = 0;
  for (double v : x) nz += v != 0.0;
  EXPECT_EQ(nz, 3);
}

TEST(Cli, ReconstructSingleRow) {
  const std::vector<std::string> args = {"reconstruct", "--n", "64", "--s", "3",
                                         "--m", "50", "--order", "1",
                                         "--delta", "0.01", "--seed", "4"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 2);
  EXPECT_EQ(a.out.rfind("ensemble,n,s,m,r,delta,alpha,ell,seed,epsilon,", 0), 0u);
}

TEST(Cli, RipscanFixtureAndProjection) {
  std::ofstream(tmp("dup.txt")) << "2 2\n1 1\n0 0\n";
  CliRun r = run({"ripscan", "--mode", "exact", "--s", "2", "--input",
                  tmp("dup.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "s,mode,value,supports_checked,rows,cols\n2,exact,1,1,2,2\n");
  r = run({"ripscan", "--mode", "mc", "--s", "2", "--trials", "50", "--m",
           "30", "--n", "10", "--project", "2,8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("monte-carlo"), std::string::npos);
  EXPECT_NE(r.out.find(",8,10\n"), std::string::npos);
}

TEST(Cli, RipscanCapError) {
  const CliRun r = run({"ripscan", "--s", "4", "--m", "10", "--n", "60",
                        "--cap", "100"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("monte-carlo"), std::string::npos);
}

TEST(Cli, SweepConfigFileWithOverrides) {
  std::ofstream(tmp("sweep.cfg"))
      << "# tiny sweep\nensemble = rademacher\nn = 40\ns = 2\nr = 1\n"
         "delta = 0.05\nalpha = 0.8\nm_grid = 20, 30\ntrials = 2\nseed = 8\n";
  const CliRun r = run({"sweep", "--config", tmp("sweep.cfg"), "--trials", "1",
                        "--threads", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const auto recs = read_sweep_csv(in);
  ASSERT_EQ(recs.size(), 2u);  // trials overridden to 1
  EXPECT_EQ(recs[0].ensemble, "rademacher");
  EXPECT_EQ(recs[1].m, 30u);
  EXPECT_EQ(recs[0].alpha, 0.8);
}

TEST(Cli, SummarizeWritesReportAndCsv) {
  const CliRun s = run({"sweep", "--n", "40", "--s", "2", "--r", "1",
                        "--m_grid", "20,40", "--trials", "2", "--output",
                        tmp("sweep.csv"), "--threads", "1"});
  ASSERT_EQ(s.code, 0) << s.err;
  const CliRun r = run({"summarize", "--input", tmp("sweep.csv"), "--output",
                        tmp("agg.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("median error slope"), std::string::npos);
  std::ifstream agg(tmp("agg.csv"));
  std::string header;
  std::getline(agg, header);
  EXPECT_EQ(header,
            "m,lambda,trials,support_correct,recovery_rate,err_q1,err_median,"
            "err_q3,bound_satisfied_rate");
}

TEST(Cli, BadInvocations) {
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"quantize"}).code, 0);  // --input required
  EXPECT_EQ(run({"reconstruct", "--ensemble", "cauchy"}).code, 1);
  EXPECT_NE(run({"reconstruct", "--order", "4"}).code, 0);
  EXPECT_EQ(run({"sweep", "--r", "4"}).code, 1);
  EXPECT_EQ(run({"ripscan", "--project", "0,4"}).code, 1);
  std::ofstream(tmp("bad.cfg")) << "bogus = 1\n";
  EXPECT_EQ(run({"sweep", "--config", tmp("bad.cfg")}).code, 1);
}

TEST(Config, FlatParser) {
  std::istringstream in("a = 1\n\n  # comment\nb=two # trailing\n");
  const auto kv = read_flat_config(in);
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[1].first, "b");
  EXPECT_EQ(kv[1].second, "two");
  std::istringstream bad("novalue\n");
  EXPECT_THROW(read_flat_config(bad), std::invalid_argument);
}

}  // namespace
}  // namespace sdq
