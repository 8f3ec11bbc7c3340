// End-to-end tests of the degamma executable: output records and the exit-code contract.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "degamma/io.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const std::string err_path = "cli_stderr_" + std::to_string(getpid()) + "_" + std::to_string(counter++) + ".txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + DEGAMMA_CLI_PATH + std::string(" ") + args + " 2>" + err_path;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_path);
  std::stringstream ss;
  ss << err.rdbuf();
  r.err = ss.str();
  std::remove(err_path.c_str());
  return r;
}

std::vector<nlohmann::json> records(const std::string& out) {
  std::vector<nlohmann::json> rows;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) rows.push_back(nlohmann::json::parse(line));
  }
  return rows;
}

std::vector<std::string> lines(const std::string& out) {
  std::vector<std::string> rows;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  return rows;
}

}  // namespace

TEST(CliEval, ClosedFormValue) {
  const auto r = run("eval --lambda 0.5 --s 1");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0]["value_re"].get<double>(), 2.0);
  EXPECT_EQ(rows[0]["value_im"].get<double>(), 0.0);
  EXPECT_EQ(rows[0]["method"], "closed-form");
  EXPECT_EQ(rows[0]["status"], "regular");
}

TEST(CliEval, RecordKeysAreExactlyTheFields) {
  const auto rows = records(run("eval --lambda 0.3 --s 1+2i").out);
  ASSERT_EQ(rows.size(), 1u);
  std::vector<std::string> keys;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys.size(), degamma::output_fields().size());
  for (const auto& f : degamma::output_fields()) EXPECT_TRUE(rows[0].contains(f)) << f;
  EXPECT_EQ(rows[0]["s_im"].get<double>(), 2.0);
  EXPECT_EQ(rows[0]["value_re"].get<double>(), 0.046009905857628541);
}

TEST(CliEval, AlternativeMethods) {
  for (const char* method : {"direct-integral", "hankel", "hankel-reflected"}) {
    const auto r = run(std::string("eval --lambda 0.5 --s 0.5 --method ") + method);
    ASSERT_EQ(r.code, 0) << method << r.err;
    const auto row = records(r.out).at(0);
    EXPECT_NEAR(row["value_re"].get<double>(), std::sqrt(2.0) * M_PI / 2, 1e-8) << method;
    EXPECT_EQ(row["method"], method);
  }
  const auto di = records(run("eval --lambda 0.5 --s 1 --method direct-integral").out).at(0);
  EXPECT_NEAR(di["value_re"].get<double>(), 2.0, 1e-10);
  const auto w = records(run("eval --lambda 0.5 --s 1 --method weierstrass --n-terms 1000000").out).at(0);
  EXPECT_NEAR(w["value_re"].get<double>(), 2.0, 1e-5);
  EXPECT_EQ(w["method"], "weierstrass");
  const auto e = records(run("eval --lambda 0.5 --s 1 --method euler-limit").out).at(0);
  EXPECT_NEAR(e["value_re"].get<double>(), 2.0, 1e-4);
}

TEST(CliEval, PoleRecordCarriesResidue) {
  const auto r = run("eval --lambda 0.5 --s -1");
  ASSERT_EQ(r.code, 0);
  const auto row = records(r.out).at(0);
  EXPECT_EQ(row["status"], "pole");
  EXPECT_DOUBLE_EQ(row["value_re"].get<double>(), -1.0);
}

TEST(CliEval, NumericErrorsExitTwo) {
  const auto strip = run("eval --lambda 0.5 --s 3 --method direct-integral");
  EXPECT_EQ(strip.code, 2);
  EXPECT_NE(strip.err.find("outside strip 0<Re(s)<1/lambda"), std::string::npos) << strip.err;
  EXPECT_EQ(run("eval --lambda 0.5 --s 2 --method hankel").code, 2);
  EXPECT_EQ(run("eval --lambda 0.5 --s 0 --method weierstrass").code, 2);
  EXPECT_EQ(run("eval --lambda 0.5 --s 1 --method weierstrass --n-terms 100 --tol 1e-8").code, 2);
  EXPECT_EQ(run("eval --lambda 0.001 --s 300.5").code, 2);
}

TEST(CliEval, UsageErrorsExit64) {
  EXPECT_EQ(run("eval --s 1").code, 64);
  EXPECT_EQ(run("eval --lambda 0.5").code, 64);
  EXPECT_EQ(run("eval --lambda 0.5 --s 1+2").code, 64);
  EXPECT_EQ(run("eval --lambda 1.5 --s 1").code, 64);
  EXPECT_EQ(run("eval --lambda 0.5 --s 1 --method simpson").code, 64);
  EXPECT_EQ(run("eval --lambda abc --s 1").code, 64);
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
}

TEST(CliEval, CsvFormat) {
  const auto r = run("eval --lambda 0.5 --s 1 --format csv");
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], degamma::csv_header());
  EXPECT_EQ(rows[1].rfind("1,0,0.5,2,0,", 0), 0u) << rows[1];
}

TEST(CliEval, DefaultToleranceFromEnvironment) {
  EXPECT_EQ(run("eval --lambda 0.5 --s 1", "DEGAMMA_DEFAULT_TOL=abc").code, 64);
  const auto r = run("eval --lambda 0.3 --s 1+2i --method direct-integral", "DEGAMMA_DEFAULT_TOL=1e-6");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(records(r.out).at(0)["value_re"].get<double>(), 0.046009905857628541, 1e-7);
  EXPECT_EQ(run("eval --lambda 0.3 --s 1 --method direct-integral", "DEGAMMA_DEFAULT_TOL=1e-20").code, 2);
}

TEST(CliPoles, Examples) {
  const auto r = run("poles --lambda 0.5 --n-max 0");
  ASSERT_EQ(r.code, 0);
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["s_re"].get<double>(), 0.0);
  EXPECT_DOUBLE_EQ(rows[0]["value_re"].get<double>(), 1.0);
  EXPECT_EQ(rows[1]["s_re"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(rows[1]["value_re"].get<double>(), -4.0);

  const auto quarter = records(run("poles --lambda 0.25 --n-max 2").out);
  ASSERT_EQ(quarter.size(), 6u);
  const double expected[] = {0, -1, -2, 4, 5, 6};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(quarter[i]["s_re"].get<double>(), expected[i]);
    EXPECT_EQ(quarter[i]["status"], "pole");
  }
  EXPECT_EQ(run("poles --n-max 2").code, 64);
  EXPECT_EQ(run("poles --lambda 0.5").code, 64);
  EXPECT_EQ(run("poles --lambda 0.5 --n-max -1").code, 64);
}

TEST(CliTable, SweepOverRealPart) {
  const auto r = run("table --lambda 0.3 --s-re 0.1:2.9:0.1");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 29u);
  for (const auto& row : rows) EXPECT_EQ(row["status"], "regular");
  EXPECT_NEAR(rows.back()["s_re"].get<double>(), 2.9, 1e-12);
}

TEST(CliTable, SweepOverLambda) {
  const auto r = run("table --s 0.5 --lambda 0.1:0.9:0.1");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 9u);
  for (const auto& row : rows) EXPECT_EQ(row["status"], "regular");
}

TEST(CliTable, PoleCellLeavesGap) {
  const auto r = run("table --lambda 0.5 --s-re -0.5:0.5:0.5");
  ASSERT_EQ(r.code, 0);
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1]["status"], "pole");
  EXPECT_TRUE(rows[1]["value_re"].is_null());
  EXPECT_EQ(rows[0]["status"], "regular");

  const auto csv = lines(run("table --lambda 0.5 --s-re -0.5:0.5:0.5 --format csv").out);
  ASSERT_EQ(csv.size(), 4u);
  EXPECT_EQ(csv[2], "0,0,0.5,,,,closed-form,pole");
}

TEST(CliTable, PreconditionFailuresAreSkipped) {
  const auto rows = records(run("table --lambda 0.5 --s-re 1:2.5:0.5 --method direct-integral").out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0]["status"], "regular");
  EXPECT_EQ(rows[2]["status"], "pole");
  EXPECT_EQ(rows[3]["status"], "skipped");
  EXPECT_TRUE(rows[3]["value_re"].is_null());
}

TEST(CliTable, UsageErrors) {
  EXPECT_EQ(run("table --lambda 0.3").code, 64);
  EXPECT_EQ(run("table --s 0.5 --lambda 0.3").code, 64);
  EXPECT_EQ(run("table --lambda 0.1:0.5:0.1 --s-re 0:1:0.5").code, 64);
  EXPECT_EQ(run("table --lambda 0.3 --s-re 1:0:0.1").code, 64);
  EXPECT_EQ(run("table --s 0.5 --lambda 0.5:1.5:0.5").code, 64);
}

TEST(CliBeta, Methods) {
  for (const char* method : {"ratio", "classical-mixed"}) {
    const auto r = run(std::string("beta --alpha 2 --beta 1 --lambda 0.1 --method ") + method);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto row = records(r.out).at(0);
    EXPECT_NEAR(row["value_re"].get<double>(), 7.0 / 18.0, 1e-14);
    EXPECT_EQ(row["method"], method);
  }
  const auto p = records(run("beta --alpha 2 --beta 1 --lambda 0.1 --method product --n-terms 1000000").out).at(0);
  EXPECT_NEAR(p["value_re"].get<double>(), 7.0 / 18.0, 1e-4);
  EXPECT_EQ(run("beta --alpha 2 --lambda 0.1").code, 64);
  EXPECT_EQ(run("beta --alpha -1 --beta 1 --lambda 0.1").code, 2);
  EXPECT_EQ(run("beta --alpha 1 --beta 1 --lambda 0.1 --method gauss").code, 64);
}

TEST(CliVerify, ZeroSamplesIsUsageError) { EXPECT_EQ(run("verify --samples 0").code, 64); }

TEST(CliVerify, SmallRunWritesReport) {
  const auto r = run("verify --seed 3 --samples 3 --report-path cli_report_small.json");
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  std::ifstream in("cli_report_small.json");
  ASSERT_TRUE(in.good());
  const auto doc = nlohmann::json::parse(in);
  EXPECT_TRUE(doc["passed"].get<bool>());
  EXPECT_EQ(doc["seed"].get<int>(), 3);
  std::vector<std::string> names;
  for (const auto& rep : doc["reports"]) names.push_back(rep["check_name"]);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_NE(std::find(names.begin(), names.end(), "cross_path_scan"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "lambda_to_one"), names.end());
}

TEST(CliVerify, ReportIsByteIdenticalAcrossRuns) {
  ASSERT_EQ(run("verify --seed 9 --samples 2 --report-path cli_report_a.json").code, 0);
  ASSERT_EQ(run("verify --seed 9 --samples 2 --report-path cli_report_b.json").code, 0);
  std::ifstream a("cli_report_a.json"), b("cli_report_b.json");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(CliVerify, InjectedFaultFailsNamedCheck) {
  const auto r = run("verify --samples 2 --inject-fault symmetry --report-path cli_report_fault.json");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("failed check: symmetry"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("FAIL symmetry"), std::string::npos);
  EXPECT_EQ(run("verify --samples 2 --inject-fault nonexistent").code, 64);
}
