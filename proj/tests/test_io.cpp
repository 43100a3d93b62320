#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ratext/io/run_config.hpp"
#include "support.hpp"

using namespace ratext;
using namespace ratext::io;
using testing_support::Gen;

namespace {

SecondCategory cat2(Sign s, long lambda, long mu, long alpha = 1) {
  return SecondCategory{s, {Rational(lambda), Rational(mu)}, Rational(alpha), Rational(0), Branch::tanh};
}

Json reparse(const Json& j) { return Json::parse(j.dump()); }

}  // namespace

TEST(Json, RationalsAndFunctions) {
  EXPECT_EQ(to_json(Rational(-3, 4)), Json("-3/4"));
  EXPECT_EQ(rational_from_json(Json("5/2")), Rational(5, 2));
  EXPECT_EQ(rational_from_json(Json(7)), Rational(7));
  EXPECT_THROW(rational_from_json(Json(0.5)), std::invalid_argument);
  EXPECT_THROW(rational_from_json(Json("2/0")), std::domain_error);

  Gen g(71);
  for (int trial = 0; trial < 50; ++trial) {
    const RationalFunction f = g.rational_function(5);
    EXPECT_EQ(rational_function_from_json(reparse(to_json(f))), f);
  }
}

TEST(Json, Number15) {
  EXPECT_EQ(number15(0.1).get<double>(), 0.1);
  EXPECT_EQ(number15(1.0 / 3.0).get<double>(), 0.333333333333333);
  EXPECT_EQ(number15(INFINITY), Json("inf"));
  EXPECT_TRUE(std::isinf(read_number(Json("-inf"))));
  EXPECT_THROW(read_number(Json("seven")), std::invalid_argument);
  EXPECT_EQ(format15(2.0 / 3.0), "0.666666666666667");
}

TEST(Json, FamilySpecRoundTrip) {
  SecondCategory coth = cat2(Sign::minus, 9, 2);
  coth.branch = Branch::coth;
  coth.phi0 = Rational(1, 3);
  for (const FamilySpec& s : {FamilySpec{Harmonic{Rational(5, 2)}}, FamilySpec{Isotonic{Rational(2), Rational(1)}},
                              FamilySpec{cat2(Sign::plus, 2, 1)}, FamilySpec{coth}}) {
    EXPECT_EQ(family_from_json(reparse(to_json(s))), s);
  }
  const Json j = Json::parse(R"({"family":"cat2","sign":"minus","lambda":"5","mu":"2"})");
  EXPECT_EQ(family_from_json(j), FamilySpec{cat2(Sign::minus, 5, 2)});
}

TEST(Json, MalformedFamilies) {
  EXPECT_THROW(family_from_json(Json::parse(R"({"family":"first"})")), std::invalid_argument);
  EXPECT_THROW(family_from_json(Json::parse(R"({"family":"harmonic"})")), std::invalid_argument);
  EXPECT_THROW(family_from_json(Json::parse(R"({"family":"harmonic","omega":"x"})")), std::invalid_argument);
  EXPECT_THROW(family_from_json(Json::parse(R"({"family":"cat2","sign":"up","lambda":"1","mu":"1"})")),
               std::invalid_argument);
  EXPECT_THROW(family_from_json(Json::parse(R"({"omega":"2"})")), nlohmann::json::exception);
}

TEST(Json, RSFunctionRoundTrip) {
  const RSFunction v = build_cf(Isotonic{Rational(2), Rational(1)}, 2, Flavor::v);
  const Json j = to_json(v);
  EXPECT_EQ(j.at("flavor"), Json("v"));
  EXPECT_EQ(rs_function_from_json(reparse(j)), v);
}

TEST(Json, ExtensionRoundTripAndShape) {
  for (const auto& [spec, n] : std::vector<std::pair<FamilySpec, unsigned>>{
           {Harmonic{Rational(2)}, 2}, {Isotonic{Rational(2), Rational(1)}, 1}, {cat2(Sign::minus, 5, 2), 1},
           {cat2(Sign::plus, 6, 1), 1}}) {
    const ExtendedPotential ext = build_extension(spec, n);
    const Json j = to_json(ext, 2);
    for (const char* key : {"spec", "n", "v_n", "V_forward", "V_tilde", "iso_kind", "spectrum", "domain"}) {
      EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_TRUE(j.at("V_tilde").contains("base_family_bar"));
    EXPECT_EQ(extension_from_json(reparse(j)), ext) << describe(spec);
  }
  const Json h = to_json(build_extension(Harmonic{Rational(2)}, 2), 4);
  ASSERT_EQ(h.at("spectrum").size(), 5u);
  EXPECT_EQ(h.at("spectrum")[1].at("energy"), Json("6"));
  EXPECT_EQ(h.at("iso_kind"), Json("almost"));
  // A partner with fewer bound levels than requested leaves the spectrum empty.
  EXPECT_TRUE(to_json(build_extension(cat2(Sign::plus, 6, 1), 1), 6).at("spectrum").empty());
}

TEST(Json, ExportIsDeterministic) {
  const ExtendedPotential a = build_extension(cat2(Sign::minus, 5, 2), 1);
  const ExtendedPotential b = build_extension(cat2(Sign::minus, 5, 2), 1);
  EXPECT_EQ(to_json(a, 2).dump(2), to_json(b, 2).dump(2));
}

TEST(Json, BadIsoKindIsRejected) {
  Json j = to_json(build_extension(Harmonic{Rational(2)}, 2), 2);
  j["iso_kind"] = "sort of";
  EXPECT_THROW(extension_from_json(j), std::invalid_argument);
}

TEST(Json, ReportShape) {
  const ExtendedPotential ext = build_extension(Harmonic{Rational(2)}, 2);
  numverify::VerifyOptions opt;
  const auto rep = numverify::verify_extension(ext, numverify::make_grid(-10, 10, 1000), 2, opt, "h");
  const Json j = to_json(rep);
  for (const char* key : {"case", "pass", "grid", "tolerances", "riccati_exact", "iso_kind", "spectrum", "checks"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("case"), Json("h"));
  EXPECT_EQ(j.at("pass").get<bool>(), rep.pass());
}

TEST(GridText, ParseAndFormat) {
  const auto a = parse_grid("auto");
  EXPECT_TRUE(a.automatic);
  const auto g = parse_grid("-10,10,4000");
  EXPECT_FALSE(g.automatic);
  EXPECT_EQ(g.lo, -10.0);
  EXPECT_EQ(g.hi, 10.0);
  EXPECT_EQ(g.N, 4000u);
  const auto t = parse_grid(format_grid(numverify::GridRequest{false, 0.1, 1.5707963267948966, 123}));
  EXPECT_EQ(t.lo, 0.1);
  EXPECT_EQ(t.hi, 1.5707963267948966);
  for (const char* bad : {"", "1,2", "1,2,3,4", "a,2,3", "0,1,-5", "0,1,2.5", "0,1,"}) {
    EXPECT_THROW(parse_grid(bad), std::invalid_argument) << bad;
  }
}

TEST(RunConfig, RoundTrip) {
  Gen g(72);
  for (int trial = 0; trial < 40; ++trial) {
    RunConfig c;
    c.command = trial % 2 == 0 ? "verify" : "extend";
    switch (trial % 3) {
      case 0: c.spec = Harmonic{Rational(g.integer(1, 9), g.integer(1, 4))}; break;
      case 1: c.spec = Isotonic{Rational(g.integer(1, 9)), Rational(g.integer(0, 3))}; break;
      default: c.spec = cat2(trial % 2 == 0 ? Sign::plus : Sign::minus, g.integer(3, 9), g.integer(1, 3));
    }
    c.n = static_cast<unsigned>(g.integer(0, 6));
    c.k_max = static_cast<unsigned>(g.integer(1, 6));
    if (trial % 4 != 0) c.grid = numverify::GridRequest{false, -g.integer(0, 5) - 0.25, 7.0 / 3.0, 1000};
    if (trial % 5 == 0) c.tol = 1e-2;
    c.out = "out" + std::to_string(trial);
    c.format = trial % 2 == 0 ? "csv" : "json";
    c.level = static_cast<unsigned>(g.integer(0, 3));
    EXPECT_EQ(run_config_from_json(reparse(to_json(c))), c);
  }
}

TEST(RunConfig, LoadErrors) {
  EXPECT_THROW(load_run_config("/nonexistent/config.json"), std::invalid_argument);
  const std::string path = ::testing::TempDir() + "ratext_bad_config.json";
  {
    std::ofstream(path) << "{ not json";
  }
  EXPECT_THROW(load_run_config(path), std::invalid_argument);
  {
    std::ofstream(path) << R"({"command":"verify","n":"two"})";
  }
  EXPECT_THROW(load_run_config(path), std::invalid_argument);
  {
    std::ofstream(path) << R"({"command":"verify","family":"harmonic","omega":"2","n":2,"grid":"-10,10,4000"})";
  }
  const RunConfig c = load_run_config(path);
  EXPECT_EQ(c.n, 2u);
  EXPECT_EQ(c.grid.N, 4000u);
  std::remove(path.c_str());
}
