#include "terminal_fano/io.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace terminal_fano;
using terminal_fano::testing::S;
using terminal_fano::testing::W;

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  double x = 1.3862943611198906;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(MatrixJson, RoundTrip) {
  auto w = W("1,1,0,0,0;0,0,1,1,2");
  Json j = matrix_json(w);
  EXPECT_EQ(j.dump(), R"({"a":[1,1,0,0,0],"b":[0,0,1,1,2]})");
  EXPECT_EQ(matrix_from_json(j), w);
  EXPECT_EQ(parse_matrix_line(j.dump()), w);
  EXPECT_EQ(parse_matrix_line("1,1,0,0,0;0,0,1,1,2"), w);
}

TEST(MatrixJson, Errors) {
  EXPECT_THROW(parse_matrix_line(R"({"a":[1,1,0,0],"b":[0,1,1]})"), parse_error);
  EXPECT_THROW(parse_matrix_line(R"({"a":[1,1,0,0]})"), parse_error);
  EXPECT_THROW(parse_matrix_line(R"({"a":[1,1,0,0],)"), parse_error);
  EXPECT_THROW(parse_matrix_line(R"({"a":["x",1,0,0],"b":[0,1,1,1]})"), parse_error);
}

TEST(RaysJson, Shape) {
  Json j = rays_json(kernel_rays(S("1,1,0,0,0;0,0,1,1,2")));
  EXPECT_EQ(j.dump(), R"({"rays":[[1,0,0],[-1,0,0],[0,1,0],[0,1,2],[0,-1,-1]]})");
}

TEST(VerdictJson, TerminalHasNullWitness) {
  auto w = S("1,1,0,0;0,0,1,1");
  EXPECT_EQ(verdict_json(w, terminal_prop1(w)).dump(),
            R"({"a":[1,1,0,0],"b":[0,0,1,1],"terminal":true,"method":"prop1","witness":null})");
}

TEST(VerdictJson, WitnessesUseOneBasedIndices) {
  auto w = S("1,1,0,0,0;0,0,1,1,2");
  Json p = verdict_json(w, terminal_prop1(w));
  EXPECT_EQ(p["witness"].dump(), R"({"vertex":1,"k":2,"l":0,"numerators":[0,0,2,2,0],"denominator":4})");
  Json f = verdict_json(w, oracle_terminal_fan(w));
  EXPECT_EQ(f["method"], "fan_oracle");
  for (const auto& c : f["witness"]["cone"]) {
    EXPECT_GE(c.get<int>(), 1);
    EXPECT_LE(c.get<int>(), 5);
  }
  Json q = verdict_json(w, oracle_terminal_polytope(w));
  EXPECT_FALSE(q["witness"].contains("cone"));
}

TEST(Records, CsvAndJsonLayouts) {
  auto w = S("1,1,0,0;0,0,1,1");
  LabeledRecord lr{w, true, canonical_key(w)};
  EXPECT_EQ(labeled_csv_row(lr), "1,1,0,0;0,0,1,1;1");
  EXPECT_EQ(labeled_json(lr).dump(), R"({"a":[1,1,0,0],"b":[0,0,1,1],"terminal":true,"key":"1,1,0,0;0,0,1,1"})");

  auto g = growth_point(w);
  LandscapeRecord rec{w, 1.0, g.A, g.B, g.ell, canonical_key(w)};
  std::string row = landscape_csv_row(rec);
  EXPECT_EQ(std::count(row.begin(), row.end(), ';'), 5);
  EXPECT_EQ(row.rfind("1,1,0,0;0,0,1,1;1;2;", 0), 0u);
  EXPECT_EQ(std::count(kLandscapeColumns.begin(), kLandscapeColumns.end(), ';'), 5);

  rec.B = -std::numeric_limits<double>::infinity();
  EXPECT_TRUE(landscape_json(rec)["B"].is_null());
  EXPECT_EQ(landscape_csv_row(rec).substr(landscape_csv_row(rec).rfind(';') + 1), "-inf");
}
