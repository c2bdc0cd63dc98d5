#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "qplane/error.hpp"
#include "qplane/io.hpp"
#include "qplane/random.hpp"

using namespace qplane;

namespace {

const QLattice kLat(0.5);

ModeFunction random_f(std::uint64_t seed) {
  GaussianSource rng(seed);
  return random_mode_function(kLat, {-2, 2}, {-3, 3}, rng);
}

int parse_error_line(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(ModeJson, RoundTripIsBitExact) {
  const ModeFunction f = random_f(1);
  const ModeFunction g = parse_mode_json(to_mode_json(f));
  EXPECT_EQ(g.lattice(), f.lattice());
  EXPECT_EQ(max_abs_diff(f, g), 0.0);
}

TEST(ModeJson, EmptyModes) {
  const ModeFunction f = parse_mode_json(R"({"q": 0.5, "modes": []})");
  EXPECT_TRUE(f.empty());
  EXPECT_EQ(f.q(), 0.5);
}

TEST(ModeJson, RepeatedModesAccumulate) {
  const ModeFunction f = parse_mode_json(R"({"q": 0.5, "modes": [{"k":0,"l":1,"re":1,"im":0},{"k":0,"l":1,"re":2,"im":1}]})");
  EXPECT_EQ(f.coeff(0, 1), Complex(3, 1));
}

TEST(ModeJson, SyntaxErrorCarriesLine) {
  const char* text = "{\n  \"q\": 0.5,\n  \"modes\": [\n    {\"k\": 0, \"l\": 0 \"re\": 1}\n  ]\n}\n";
  EXPECT_EQ(parse_error_line([&] { parse_mode_json(text); }), 4);
}

TEST(ModeJson, StructuralErrors) {
  EXPECT_THROW(parse_mode_json("[]"), ParseError);
  EXPECT_THROW(parse_mode_json(R"({"modes": []})"), ParseError);
  EXPECT_THROW(parse_mode_json(R"({"q": 0.5, "modes": {}})"), ParseError);
  EXPECT_THROW(parse_mode_json(R"({"q": 0.5, "modes": [{"k": 0.5, "l": 0, "re": 1, "im": 0}]})"), ParseError);
  EXPECT_THROW(parse_mode_json(R"({"q": 0.5, "modes": [{"k": 0, "l": 0, "re": "x", "im": 0}]})"), ParseError);
  EXPECT_THROW(parse_mode_json(R"({"q": 2.0, "modes": []})"), ParseError);
}

TEST(ModeCsv, RoundTrip) {
  const ModeFunction f = random_f(2);
  EXPECT_EQ(max_abs_diff(parse_mode_csv(to_mode_csv(f), kLat), f), 0.0);
}

TEST(ModeCsv, ErrorsCarryLine) {
  EXPECT_EQ(parse_error_line([] { parse_mode_csv("k,l,re,im\n0,0,1,0\n1,2,3\n", kLat); }), 3);
  EXPECT_EQ(parse_error_line([] { parse_mode_csv("k,l,re,im\n0,zero,1,0\n", kLat); }), 2);
  EXPECT_EQ(parse_error_line([] { parse_mode_csv("a,b,c,d\n", kLat); }), 1);
  EXPECT_EQ(parse_error_line([] { parse_mode_csv("", kLat); }), 1);
}

TEST(ModeFiles, ReadWriteByExtension) {
  const auto dir = std::filesystem::temp_directory_path() / "qplane_io_test";
  std::filesystem::create_directories(dir);
  const ModeFunction f = random_f(3);
  write_mode_file(dir / "f.json", f);
  write_mode_file(dir / "f.csv", f);
  EXPECT_EQ(max_abs_diff(read_mode_file(dir / "f.json"), f), 0.0);
  EXPECT_EQ(max_abs_diff(read_mode_file(dir / "f.csv", kLat), f), 0.0);
  EXPECT_THROW(read_mode_file(dir / "f.csv"), ConfigError);
  EXPECT_THROW(read_mode_file(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
  EXPECT_EQ(mode_format_for("a/b.CSV"), ModeFormat::Csv);
  EXPECT_EQ(mode_format_for("a/b.txt"), ModeFormat::Json);
}

TEST(FormatNumber, SeventeenDigitsAndNonFinite) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}
