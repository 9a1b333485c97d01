#include "toroidal_lab/config.hpp"
#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/report.hpp"

#include <gtest/gtest.h>

using namespace tlab;

TEST(Config, ParsesAndOverrides) {
  const RunConfig c = parse_config("# comment\nq = golden\ntheta2=1/5\n\nN=200\nrecipe=rough\ntol=1e-7\n");
  EXPECT_EQ(c.q.canonical(), Real::golden().canonical());
  EXPECT_EQ(c.theta2.rational(), Rational(1, 5));
  EXPECT_EQ(c.N, 200);
  EXPECT_EQ(c.recipe, "rough");
  EXPECT_DOUBLE_EQ(c.tol, 1e-7);
  RunConfig d = c;
  apply_setting(d, "box", "4");
  EXPECT_EQ(d.box, 4);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("nonsense=1"), ParseError);
  EXPECT_THROW(parse_config("q"), ParseError);
  EXPECT_THROW(parse_config("N=abc"), ParseError);
  EXPECT_THROW(parse_config("q=pi"), ParseError);
  EXPECT_THROW(parse_config("format=xml"), ParseError);
}

TEST(Config, PrecisionAppliesBeforeReals) {
  const RunConfig c = parse_config("q=f:0.7071067811865476\nprecision_bits=200\n");
  EXPECT_EQ(c.precision_bits, 200);
  const RunConfig d = parse_config("q=f:0.7071067811865476\n");
  EXPECT_LT(c.q.enclosure().log2_radius, d.q.enclosure().log2_radius - 100);
}

TEST(Config, SerializeIsCanonical) {
  for (const char* text : {"", "q=sqrt(8)\ntheta2=2/6\nseed=7", "tau_re=1/2\ntau_im=3/2\nq=superliouville(3,10)",
                           "p=0.25\nq=float(0.3,64)\ntol=1e-9\nselect=1,3-5"}) {
    const RunConfig c = parse_config(text);
    const std::string s = serialize_config(c);
    EXPECT_EQ(serialize_config(parse_config(s)), s) << text;
  }
}

TEST(Config, Selection) {
  EXPECT_EQ(parse_selection("all", 11).size(), 11u);
  EXPECT_TRUE(parse_selection("", 11).empty());
  EXPECT_TRUE(parse_selection("none", 11).empty());
  EXPECT_EQ(parse_selection("1,3,5-7", 11), (std::vector<int>{1, 3, 5, 6, 7}));
  EXPECT_THROW(parse_selection("12", 11), ParseError);
  EXPECT_THROW(parse_selection("3-1", 11), ParseError);
}

TEST(Report, DeterministicJson) {
  Json j;
  j["b"] = 0.1;
  j["a"] = {1, 2.5, "x"};
  j["c"] = std::numeric_limits<double>::infinity();
  const std::string s = dump_json(j);
  EXPECT_EQ(s, dump_json(Json::parse(dump_json(j))));
  EXPECT_LT(s.find("\"a\""), s.find("\"b\""));
  EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(s.find("\"inf\""), std::string::npos);
}

TEST(Report, ConfigAndConstantsFields) {
  const RunConfig c = parse_config("q=sqrt(2)\ntheta2=1/3");
  const Json j = to_json(c);
  for (const char* k : {"tau_re", "tau_im", "p", "q", "theta1", "theta2", "precision_bits"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["q"], "sqrt(2)");
}

TEST(Report, CsvShapes) {
  const DistanceSequence d = distance_sequence_fiber(Real::parse("sqrt(2)"), Real::parse("1/3"), 10);
  const std::string csv = distances_csv(d);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
  const DivisorTable t = divisor_min_scan(
      derive_constants(GroupParams(cplx(0, 1), Real::from_int(0), Real::parse("sqrt(2)")), Real::parse("1/3")), 1, 1);
  const std::string dcsv = divisors_csv(t);
  EXPECT_EQ(std::count(dcsv.begin(), dcsv.end(), '\n'), 10);
}
