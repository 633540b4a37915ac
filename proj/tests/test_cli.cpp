#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "focus/cli.hpp"
#include "focus/imageio.hpp"
#include "focus/stack.hpp"

namespace focus::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("focus_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_pgm(const std::string& name, const GrayImage& img) const {
    io::write_file(dir_ / name, io::encode_pgm(img));
    return path(name);
  }

  std::string synth_stack(std::vector<std::string> extra = {}) const {
    std::vector<std::string> args{"synth", "--out", path("stack"), "--width", "64", "--height",
                                  "48"};
    args.insert(args.end(), extra.begin(), extra.end());
    const Result r = run_cli(args);
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return path("stack/manifest.csv");
  }

  fs::path dir_;
};

TEST_F(CliTest, ScoreConstantImage) {
  const std::string img = write_pgm("flat.pgm", GrayImage(10, 10, 80.0));
  const Result r = run_cli({"score", img, "--metric", "eog"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "eog,0\n");
}

TEST_F(CliTest, ScoreErrors) {
  const std::string img = write_pgm("flat.pgm", GrayImage(10, 10, 80.0));
  EXPECT_EQ(run_cli({"score", path("missing.pgm"), "--metric", "eog"}).code, kExitIo);
  EXPECT_EQ(run_cli({"score", img, "--metric", "sml", "--sml-step", "0"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"score", img, "--metric", "sml", "--sml-step", "5"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"score", img, "--metric", "brenner"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"score", img}).code, kExitValidation);
  io::write_text_file(dir_ / "junk.pgm", "P2\n1 1\n255\n0\n");
  EXPECT_EQ(run_cli({"score", path("junk.pgm"), "--metric", "eog"}).code, kExitIo);
}

TEST_F(CliTest, SynthWritesStack) {
  const std::string manifest = synth_stack({"--positions", "12", "--true-focus", "5"});
  const FocusStack stack = io::load_stack(manifest);
  EXPECT_EQ(stack.size(), 12u);
  EXPECT_EQ(stack.width(), 64u);
  EXPECT_EQ(stack[11].position_mm, 11.0);
}

TEST_F(CliTest, SynthRejectsBadFocusBeforeWriting) {
  const Result r =
      run_cli({"synth", "--out", path("bad"), "--positions", "96", "--true-focus", "100"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_FALSE(fs::exists(path("bad")));
  EXPECT_EQ(run_cli({"synth", "--out", path("bad"), "--scene", "stars"}).code, kExitValidation);
}

TEST_F(CliTest, SynthIsDeterministic) {
  for (const char* sub : {"a", "b"}) {
    EXPECT_EQ(run_cli({"synth", "--out", path(sub), "--positions", "6", "--true-focus", "2",
                       "--scene", "lowdetail", "--seed", "9", "--width", "20", "--height", "16"})
                  .code,
              kExitOk);
  }
  for (const auto& entry : fs::directory_iterator(path("a"))) {
    EXPECT_EQ(io::read_file(entry.path()),
              io::read_file(fs::path(path("b")) / entry.path().filename()));
  }
}

TEST_F(CliTest, CurveWritesCsvAndSummary) {
  const std::string manifest = synth_stack({"--positions", "20", "--true-focus", "7"});
  const Result r = run_cli({"curve", manifest, "--metric", "eol", "--out", path("eol.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("best_position=", 0), 0u);
  EXPECT_NE(r.out.find("unimodal="), std::string::npos);
  EXPECT_NE(r.out.find("maxima="), std::string::npos);
  EXPECT_NE(r.out.find("sharpness="), std::string::npos);

  // Same bytes as serialising compute_curve directly.
  const auto bytes = io::read_file(path("eol.csv"));
  const std::string csv(bytes.begin(), bytes.end());
  const FocusCurve direct = compute_curve(io::load_stack(manifest), MetricId::Eol, {});
  EXPECT_EQ(csv, io::write_curve_csv(direct) + "\n");
}

TEST_F(CliTest, CurveToStdout) {
  const std::string manifest = synth_stack({"--positions", "5", "--true-focus", "2", "--rate", "1"});
  const Result r = run_cli({"curve", manifest, "--metric", "variance"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("position,score\n", 0), 0u);
  EXPECT_NE(r.err.find("best_position=2 index=2"), std::string::npos);
}

TEST_F(CliTest, CurveValidation) {
  const std::string img = write_pgm("one.pgm", GrayImage(8, 8, 1.0));
  io::write_text_file(dir_ / "single.csv", "0,one.pgm\n");
  EXPECT_EQ(run_cli({"curve", path("single.csv"), "--metric", "eog"}).code, kExitValidation);

  const std::string manifest = synth_stack({"--positions", "5", "--true-focus", "2"});
  const Result even = run_cli({"curve", manifest, "--metric", "eog", "--smoothing", "2",
                               "--out", path("never.csv")});
  EXPECT_EQ(even.code, kExitValidation);
  EXPECT_EQ(run_cli({"curve", manifest, "--metric", "eog", "--smoothing", "7", "--out",
                     path("never.csv")})
                .code,
            kExitValidation);
  EXPECT_FALSE(fs::exists(path("never.csv")));
  EXPECT_EQ(run_cli({"curve", path("nope.csv"), "--metric", "eog"}).code, kExitIo);
}

TEST_F(CliTest, SearchStrategies) {
  const std::string manifest = synth_stack({"--positions", "96", "--true-focus", "40"});
  const Result full = run_cli({"search", manifest, "--metric", "eog", "--strategy", "full"});
  ASSERT_EQ(full.code, kExitOk) << full.err;
  EXPECT_NE(full.out.find("evaluations=96\n"), std::string::npos);

  const Result coarse = run_cli(
      {"search", manifest, "--metric", "eog", "--strategy", "coarse", "--coarse-step", "8"});
  ASSERT_EQ(coarse.code, kExitOk) << coarse.err;
  const auto chosen = [](const std::string& s) {
    const auto at = s.find("chosen_index=");
    return s.substr(at, s.find('\n', at) - at);
  };
  EXPECT_EQ(chosen(coarse.out), chosen(full.out));
  EXPECT_EQ(coarse.out.find("evaluations=96\n"), std::string::npos);
  EXPECT_NE(coarse.out.find("probed=0,8,16"), std::string::npos);

  EXPECT_EQ(run_cli({"search", manifest, "--metric", "eog", "--strategy", "golden"}).code,
            kExitValidation);
  EXPECT_EQ(run_cli({"search", manifest, "--metric", "eog", "--strategy", "coarse",
                     "--coarse-step", "96"})
                .code,
            kExitValidation);
}

TEST_F(CliTest, BenchPrintsSixRows) {
  const std::string img = write_pgm("tex.pgm", GrayImage(160, 120, 3.0));
  const Result r = run_cli({"bench", img, "--reps", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "metric,width,height,reps,min_us,median_us,mean_us");
  std::vector<std::string> names;
  while (std::getline(lines, line)) {
    std::vector<std::string> cols;
    std::istringstream row(line);
    for (std::string col; std::getline(row, col, ',');) cols.push_back(col);
    ASSERT_EQ(cols.size(), 7u);
    names.push_back(cols[0]);
    EXPECT_EQ(cols[1], "160");
    EXPECT_EQ(cols[3], "1");
    EXPECT_EQ(cols[4], cols[5]);  // min == median with one repetition
  }
  EXPECT_EQ(names, (std::vector<std::string>{"variance", "eog", "tenengrad", "eol", "sml", "crete"}));
}

TEST_F(CliTest, BenchRejectsTooSmallImage) {
  const std::string img = write_pgm("tiny.pgm", GrayImage(2, 2, 3.0));
  EXPECT_EQ(run_cli({"bench", img, "--reps", "2"}).code, kExitValidation);
}

}  // namespace
}  // namespace focus::cli
