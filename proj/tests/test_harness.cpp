#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "nslab/config.hpp"
#include "nslab/ops.hpp"
#include "nslab/regress.hpp"
#include "nslab/scenario.hpp"
#include "nslab/rng.hpp"
#include "nslab/verify.hpp"

using namespace nslab;

TEST_CASE("config: defaults, overrides, comments, failure modes") {
    Config cfg = Config::from_string(
        "# comment\n"
        "grid.N_tan = 64\n"
        "scenario.family = band   # trailing comment\n"
        "picard.stop_tol = 1e-6\n");
    CHECK(cfg.get_int("grid.N_tan", 128) == 64);
    CHECK(cfg.get_string("scenario.family", "") == "band");
    CHECK(cfg.get_double("picard.stop_tol", 0.0) == doctest::Approx(1e-6));
    CHECK(cfg.get_double("grid.L", 6.28) == doctest::Approx(6.28));

    CHECK_THROWS_AS(Config::from_string("grid.bogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("grid.N_tan = abc\n").get_int("grid.N_tan", 0),
                    ConfigError);

    ScenarioSpec spec = cfg.scenario();
    CHECK(spec.n_tan == 64);
    CHECK(spec.family == "band");
}

TEST_CASE("slope_regress: exact powers, prefactors, noise, errors") {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i < 12; ++i) {
        double t = std::pow(2.0, i);
        series.push_back({t, std::pow(t, -0.5)});
    }
    SlopeFit f = slope_regress(series, 0, series.size());
    CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(f.stderr_ <= 1e-12);

    for (auto& [t, v] : series) v = 3.0 * std::pow(t, -0.25) / std::pow(t, -0.5);
    // v = 3 t^{0.25}: prefactor invisible in the slope
    SlopeFit g = slope_regress(series, 0, series.size());
    CHECK(g.slope == doctest::Approx(0.25).epsilon(1e-12));

    Rng rng(4);
    std::vector<std::pair<double, double>> noisy;
    for (int i = 0; i < 40; ++i) {
        double t = std::pow(1.5, i);
        noisy.push_back({t, std::pow(t, -1.0) * (1.0 + 0.05 * rng.gaussian())});
    }
    SlopeFit h = slope_regress(noisy, 0, noisy.size());
    CHECK(std::fabs(h.slope + 1.0) <= 2.0 * h.stderr_ + 0.01);

    CHECK_THROWS(slope_regress(noisy, 0, 3));
    noisy[5].second = -1.0;
    CHECK_THROWS(slope_regress(noisy, 0, noisy.size()));
}

TEST_CASE("seeded scenarios reproduce byte-identical samples") {
    ScenarioSpec spec;
    spec.family = "band";
    spec.band = 2;
    spec.seed = 12345;
    HalfSpaceGrid g = spec.make_grid();
    VectorField a = generate_initial_data(spec, g);
    VectorField b = generate_initial_data(spec, g);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.data()[i] == b.data()[i]);
}

TEST_CASE("band samples name the same datum across refinement levels") {
    ScenarioSpec spec;
    HalfSpaceGrid coarse = spec.make_grid();
    HalfSpaceGrid fine = spec.make_grid(1.5);
    ScalarField c = scalar_band_sample(coarse, 3, 7);
    ScalarField f = scalar_band_sample(fine, 3, 7);
    // compare on shared physical points: every row of the coarse tangential
    // lattice that also lies on the fine one (x = 0 column always does)
    double cv = c.at(coarse.rows() / 2, 0);
    // same normal height on the fine grid: x = H/2 is row rows/2 on both
    double fv = f.at(fine.rows() / 2, 0);
    CHECK(cv == doctest::Approx(fv).epsilon(1e-12));
}

TEST_CASE("verification report round-trips through CSV and JSON") {
    VerificationReport rep;
    rep.records.push_back({"demo/check-a", "plumbing", 0.5, 1.2, 0, true, 0.1});
    rep.records.push_back({"demo/check-b", "heat-semigroup", 2.0, 0.0, 1, false, 0.2});
    rep.criteria.push_back({1, "demo", false, 0.3});
    CHECK(!rep.all_pass());
    rep.write_csv("report_test.csv");
    rep.write_json("report_test.json");

    std::ifstream csv("report_test.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "check,anchor,measured,constant,level,pass");
    std::string row;
    std::getline(csv, row);
    CHECK(row.find("demo/check-a") != std::string::npos);
    CHECK(row.find("plumbing") != std::string::npos);

    std::ifstream js("report_test.json");
    std::string all((std::istreambuf_iterator<char>(js)), std::istreambuf_iterator<char>());
    CHECK(all.find("\"all_pass\": false") != std::string::npos);
}

TEST_CASE("zero amplitude produces the zero field") {
    ScenarioSpec spec;
    spec.family = "dipole";
    spec.amplitude = 0.0;
    HalfSpaceGrid g = spec.make_grid();
    VectorField u = generate_initial_data(spec, g);
    CHECK(u.max_abs() == 0.0);
}
