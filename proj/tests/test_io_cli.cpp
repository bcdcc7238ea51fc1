#include <gtest/gtest.h>

#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <unistd.h>

#include "alignlab/cli.hpp"
#include "alignlab/fixtures.hpp"
#include "alignlab/io.hpp"
#include "alignlab/solver.hpp"
#include "support.hpp"

using namespace alignlab;
using namespace testing_support;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "alignlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("alignlab_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str(const std::string& sub = "") const { return (sub.empty() ? path_ : path_ / sub).string(); }

 private:
  fs::path path_;
};

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = read_text(e.path());
  return files;
}

}  // namespace

TEST(Csv, RoundTripIsExact) {
  Mat m = gaussian(7, 3, 1);
  m(0, 0) = 1e-300;
  m(1, 1) = -123456789.123456789;
  m(2, 2) = 0.1;
  EXPECT_EQ(parse_csv(csv_text(m)), m);
}

TEST(Csv, HeaderAndNonFinite) {
  Mat m(1, 3);
  m << std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity(), -1.5;
  const std::string text = csv_text(m);
  EXPECT_EQ(text.substr(0, text.find('\n')), "c0,c1,c2");
  EXPECT_NE(text.find("nan,inf,-1.5"), std::string::npos);
}

TEST(Csv, MalformedInput) {
  expect_kind(ErrorKind::DimensionMismatch, [] { parse_csv("c0,c1\n1,2\n3\n"); });
  expect_kind(ErrorKind::InvalidInput, [] { parse_csv("c0\nabc\n"); });
}

TEST(Io, AtomicWriteLeavesNoTempFile) {
  TempDir t;
  const fs::path p = t.path() / "a.txt";
  write_atomic(p, "first");
  write_atomic(p, "second");
  EXPECT_EQ(read_text(p), "second");
  EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST(Io, UnreachablePathsAreIoErrors) {
  TempDir t;
  write_atomic(t.path() / "plain", "x");
  expect_kind(ErrorKind::Io, [&] { read_text(t.path() / "missing.csv"); });
  expect_kind(ErrorKind::Io, [&] { write_atomic(t.path() / "plain" / "file.csv", "x"); });
}

TEST(Io, DatasetRoundTrip) {
  TempDir t;
  const Dataset d = synth_generate(fixtures::linear_thm2());
  write_dataset(t.path(), d, Json{{"note", "x"}});
  const Dataset back = read_dataset(t.path());
  EXPECT_EQ(back.x1, d.x1);
  EXPECT_EQ(back.y2, d.y2);
  EXPECT_TRUE(back.standardized);
  EXPECT_EQ(read_json(t.path() / "meta.json").at("note"), "x");
}

TEST(Io, SynthConfigJsonRoundTrip) {
  const SynthConfig c = fixtures::nonlinear_thm2();
  const SynthConfig back = synth_config_from_json(to_json(c));
  EXPECT_EQ(synth_generate(back).x1, synth_generate(c).x1);
  Json bad = to_json(c);
  bad["n"] = 1;
  expect_kind(ErrorKind::InvalidConfig, [&] { synth_config_from_json(bad); });
}

TEST(Cli, GenCheckSolveOnLinearFixture) {
  TempDir t;
  ASSERT_EQ(run({"gen", "--preset", "thm2-linear", "--out", t.str("data")}).code, kExitOk);
  ASSERT_EQ(run({"check", "--data", t.str("data"), "--out", t.str("check")}).code, kExitOk);
  const Json a = read_json(t.path() / "check" / "assumptions.json");
  EXPECT_TRUE(a.at("thm2_i").get<bool>());
  EXPECT_TRUE(a.at("thm2_ii").get<bool>());

  ASSERT_EQ(run({"solve", "--data", t.str("data"), "--k", "2", "--lambda", "1", "--out", t.str("solve")}).code, kExitOk);
  const Json l = read_json(t.path() / "solve" / "losses.json");
  const Dataset d = read_dataset(t.path() / "data");
  const ClosedFormSolution s = solve_closed_form(d, 2, 1.0);
  EXPECT_EQ(l.at("losses").at("total").get<double>(), s.losses.total);
  for (const char* key : {"pred1", "pred2", "align", "lambda", "total"}) EXPECT_TRUE(l.at("losses").contains(key)) << key;
  EXPECT_EQ(read_csv(t.path() / "solve" / "v1.csv"), s.params.v1);
  for (const char* f : {"v2.csv", "w1.csv", "w2.csv", "q1.csv"}) EXPECT_TRUE(fs::exists(t.path() / "solve" / f)) << f;
}

TEST(Cli, SweepCsvColumns) {
  TempDir t;
  ASSERT_EQ(run({"gen", "--preset", "thm2-linear", "--out", t.str("data")}).code, kExitOk);
  ASSERT_EQ(run({"sweep", "--data", t.str("data"), "--k", "2", "--lambdas", "0,0.5,1,5", "--svg", "--out", t.str("s")}).code,
            kExitOk);
  const std::string csv = read_text(t.path() / "s" / "sweep.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda,pred1,pred2,align,total,sigma11_z,drift");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_EQ(read_text(t.path() / "s" / "sweep.svg").rfind("<svg", 0), 0u);
}

TEST(Cli, ExitCodes) {
  TempDir t;
  EXPECT_EQ(run({}).code, kExitValidation);
  EXPECT_EQ(run({"bogus"}).code, kExitValidation);
  EXPECT_EQ(run({"solve", "--data", t.str("missing")}).code, kExitIo);
  ASSERT_EQ(run({"gen", "--out", t.str("data")}).code, kExitOk);
  EXPECT_EQ(run({"solve", "--data", t.str("data"), "--k", "0", "--out", t.str("o")}).code, kExitValidation);
  EXPECT_EQ(run({"solve", "--data", t.str("data"), "--lambda", "-1", "--out", t.str("o")}).code, kExitValidation);
  EXPECT_EQ(run({"solve", "--data", t.str("data"), "--k", "99", "--out", t.str("o")}).code, kExitValidation);
  EXPECT_EQ(run({"gen", "--preset", "nope", "--out", t.str("d2")}).code, kExitValidation);
  EXPECT_EQ(run({"sweep", "--data", t.str("data"), "--lambdas", "0,x", "--out", t.str("o")}).code, kExitValidation);
  const Result r = run({"solve", "--data", t.str("data"), "--k", "0", "--out", t.str("o")});
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, ConfigFileFillsUnsetFlagsOnly) {
  TempDir t;
  ASSERT_EQ(run({"gen", "--out", t.str("data")}).code, kExitOk);
  write_json(t.path() / "cfg.json", Json{{"data", t.str("data")}, {"k", 2}, {"lambda", 3.0}});
  ASSERT_EQ(run({"solve", "--config", t.str("cfg.json"), "--lambda", "0.5", "--out", t.str("o")}).code, kExitOk);
  const Json l = read_json(t.path() / "o" / "losses.json");
  EXPECT_EQ(l.at("k").get<int>(), 2);
  EXPECT_EQ(l.at("losses").at("lambda").get<double>(), 0.5);

  write_json(t.path() / "bad.json", Json{{"k", "two"}});
  EXPECT_EQ(run({"solve", "--config", t.str("bad.json"), "--data", t.str("data"), "--out", t.str("o")}).code,
            kExitValidation);
}

TEST(Cli, ConfigSynthOverrides) {
  TempDir t;
  write_json(t.path() / "cfg.json", Json{{"synth", Json{{"n", 50}, {"d1", 5}}}});
  ASSERT_EQ(run({"gen", "--config", t.str("cfg.json"), "--out", t.str("data")}).code, kExitOk);
  const Dataset d = read_dataset(t.path() / "data");
  EXPECT_EQ(d.n(), 50);
  EXPECT_EQ(d.d1(), 5);
}

TEST(Cli, OutputsAreDeterministicAndInputIsUntouched) {
  TempDir t;
  ASSERT_EQ(run({"gen", "--preset", "thm2-linear", "--out", t.str("data")}).code, kExitOk);
  const auto before = snapshot(t.path() / "data");
  const std::vector<std::vector<std::string>> commands{
      {"check", "--k", "2"},
      {"solve", "--k", "2", "--lambda", "1"},
      {"oracle", "--k", "2", "--lambda", "1", "--restarts", "3"},
      {"sweep", "--k", "2", "--lambdas", "0,1,10", "--svg"}};
  for (const auto& cmd : commands) {
    for (const char* sub : {"a", "b"}) {
      auto args = cmd;
      args.insert(args.end(), {"--data", t.str("data"), "--out", t.str(std::string(sub) + "_" + cmd[0])});
      ASSERT_EQ(run(args).code, kExitOk) << cmd[0];
    }
    EXPECT_EQ(snapshot(t.path() / ("a_" + cmd[0])), snapshot(t.path() / ("b_" + cmd[0]))) << cmd[0];
  }
  EXPECT_EQ(snapshot(t.path() / "data"), before);
}

TEST(Cli, RawFlagSkipsStandardization) {
  TempDir t;
  ASSERT_EQ(run({"gen", "--out", t.str("data")}).code, kExitOk);
  Dataset d = read_dataset(t.path() / "data");
  d.y1 *= 3.0;
  write_dataset(t.path() / "scaled", d, Json::object());
  ASSERT_EQ(run({"solve", "--data", t.str("scaled"), "--k", "2", "--out", t.str("std")}).code, kExitOk);
  ASSERT_EQ(run({"solve", "--data", t.str("scaled"), "--k", "2", "--raw", "--out", t.str("raw")}).code, kExitOk);
  const double pred_std = read_json(t.path() / "std" / "losses.json").at("losses").at("pred1").get<double>();
  const double pred_raw = read_json(t.path() / "raw" / "losses.json").at("losses").at("pred1").get<double>();
  EXPECT_NEAR(pred_raw, 9.0 * pred_std, 1e-8 * pred_raw);
}

TEST(Cli, InformativenessReport) {
  TempDir t;
  ASSERT_EQ(run({"gen", "--preset", "thm2-linear", "--out", t.str("data")}).code, kExitOk);
  ASSERT_EQ(run({"solve", "--data", t.str("data"), "--k", "2", "--lambda", "10", "--out", t.str("o")}).code, kExitOk);
  const Json r = read_json(t.path() / "o" / "report.json");
  const Dataset d = read_dataset(t.path() / "data");
  EXPECT_EQ(r.at("sigma").size(), 2u);
  EXPECT_NEAR(r.at("sigma")[0][0].get<double>(), sigma_brute(d.x1, d.y1), 1e-10);
  EXPECT_NEAR(r.at("sigma")[1][0].get<double>(), sigma_brute(d.x2, d.y1), 1e-10);
  EXPECT_EQ(r.at("sigma_k1").size(), 2u);
  EXPECT_EQ(r.at("sigma_k2").size(), 2u);
  EXPECT_LT(r.at("sigma11_z").get<double>(), r.at("sigma")[0][0].get<double>() - 0.05);
}

TEST(Cli, SolveAndOracleAgreeAtLambdaZero) {
  TempDir t;
  ASSERT_EQ(run({"gen", "--out", t.str("data")}).code, kExitOk);
  ASSERT_EQ(run({"solve", "--data", t.str("data"), "--k", "3", "--lambda", "0", "--out", t.str("s")}).code, kExitOk);
  ASSERT_EQ(run({"oracle", "--data", t.str("data"), "--k", "3", "--lambda", "0", "--out", t.str("o")}).code, kExitOk);
  const double a = read_json(t.path() / "s" / "losses.json").at("losses").at("total").get<double>();
  const double b = read_json(t.path() / "o" / "losses.json").at("losses").at("total").get<double>();
  EXPECT_LE(std::abs(a - b), 1e-4 * std::abs(a));
  EXPECT_EQ(read_text(t.path() / "o" / "trace.csv").rfind("sweep,total\n", 0), 0u);
}

TEST(Cli, CheckReportsFailuresWithExitZero) {
  TempDir t;
  ASSERT_EQ(run({"gen", "--out", t.str("data")}).code, kExitOk);
  ASSERT_EQ(run({"check", "--data", t.str("data"), "--k", "4", "--out", t.str("c")}).code, kExitOk);
  EXPECT_FALSE(read_json(t.path() / "c" / "assumptions.json").at("thm2_i").get<bool>());
  EXPECT_TRUE(read_json(t.path() / "data" / "meta.json").contains("standardized"));
}
