#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "cli_runner.hpp"
#include "qplane/io.hpp"
#include "qplane/mode_function.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "qplane_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(CliFq, PointOnPositiveAxis) {
  const cli::Result r = cli::run("fq --point 0 0");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(CliFq, PointAtMinusOne) {
  const cli::Result r = cli::run("fq --point 0 3.14159265358979 --format csv");
  ASSERT_EQ(r.exit_code, 0);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  double k, t, re, im;
  char c;
  std::istringstream(row) >> k >> c >> t >> c >> re >> c >> im;
  EXPECT_NEAR(re, -1.0, 1e-9);
  EXPECT_NEAR(im, 0.0, 1e-9);
}

TEST(CliFq, CircleRows) {
  const cli::Result r = cli::run("fq --circle -2 --ntheta 8");
  ASSERT_EQ(r.exit_code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,theta,re,im");
  int rows = 0;
  while (std::getline(in, line)) {
    double k, t, re, im;
    char c;
    std::istringstream(line) >> k >> c >> t >> c >> re >> c >> im;
    EXPECT_NEAR(std::hypot(re, im), 1.0, 1e-10);
    ++rows;
  }
  EXPECT_EQ(rows, 8);
}

TEST(CliFq, UsageErrors) {
  EXPECT_EQ(cli::run("fq").exit_code, 2);
  EXPECT_EQ(cli::run("fq --point 0").exit_code, 2);
  EXPECT_EQ(cli::run("fq --point 0 0 --q 1.5").exit_code, 2);
  EXPECT_EQ(cli::run("nonsense").exit_code, 2);
  EXPECT_EQ(cli::run("--help").exit_code, 0);
}

TEST(CliTransform, BasisStaysOnModeZero) {
  const fs::path dir = scratch();
  qplane::write_text_file(dir / "g00.json", R"({"q": 0.5, "modes": [{"k": 0, "l": 0, "re": 1, "im": 0}]})");
  const cli::Result r = cli::run("transform --in " + (dir / "g00.json").string() + " --out " + (dir / "out.json").string());
  ASSERT_EQ(r.exit_code, 0);
  const qplane::ModeFunction f = qplane::read_mode_file(dir / "out.json");
  EXPECT_FALSE(f.empty());
  for (const auto& [m, c] : f.coeffs()) EXPECT_EQ(m.l, 0);
  EXPECT_TRUE(fs::exists(dir / "out.json.tail.json"));
}

TEST(CliTransform, EmptyInputGivesEmptyOutput) {
  const fs::path dir = scratch();
  qplane::write_text_file(dir / "empty.json", R"({"q": 0.5, "modes": []})");
  const cli::Result r = cli::run("transform --in " + (dir / "empty.json").string() + " --out " + (dir / "empty_out.json").string());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(qplane::read_mode_file(dir / "empty_out.json").empty());
}

TEST(CliTransform, MalformedInput) {
  const fs::path dir = scratch();
  qplane::write_text_file(dir / "bad.json", "{\"q\": 0.5,\n \"modes\": [\n");
  const cli::Result r = cli::run("transform --in " + (dir / "bad.json").string(), "", "2>&1");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("line"), std::string::npos);
  EXPECT_EQ(cli::run("transform --in " + (dir / "nowhere.json").string()).exit_code, 1);
}

TEST(CliVerify, ExitCodes) {
  EXPECT_EQ(cli::run("verify --suite measure --random-functions 3 --format text").exit_code, 0);
  EXPECT_EQ(cli::run("verify --q 1.5").exit_code, 2);
  EXPECT_EQ(cli::run("verify --suite nope").exit_code, 2);
  EXPECT_EQ(cli::run("verify --suite fourier --kmin -1 --kmax 1").exit_code, 1);
}

TEST(CliVerify, ThreadCapDoesNotChangeReport) {
  const std::string args = "verify --suite measure,fq --random-functions 3";
  const cli::Result a = cli::run(args);
  const cli::Result b = cli::run(args, "QPLANE_THREADS=1");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(cli::without_timing(a.out), cli::without_timing(b.out));
}

TEST(CliConvergence, SinglePoint) {
  const cli::Result r = cli::run("convergence --axis kwindow --values 8");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
  EXPECT_EQ(r.out.find("monotone"), std::string::npos);
}
