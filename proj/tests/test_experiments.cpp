#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "mpe/config.hpp"
#include "mpe/errors.hpp"
#include "mpe/experiments.hpp"
#include "mpe/fit.hpp"

using namespace mpe;

TEST_CASE("verdict exit codes follow the process contract") {
    CHECK(verdict_exit_code(Verdict::Pass) == 0);
    CHECK(verdict_exit_code(Verdict::Fail) == 2);
    CHECK(verdict_exit_code(Verdict::Inconclusive) == 3);
    CHECK(std::string(verdict_name(Verdict::Pass)) == "Pass");
    CHECK(std::string(verdict_name(Verdict::Fail)) == "Fail");
    CHECK(std::string(verdict_name(Verdict::Inconclusive)) == "Inconclusive");
}

TEST_CASE("line fit recovers exact lines and guards degenerate input") {
    std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    std::vector<double> y;
    for (double v : x) y.push_back(-0.75 * v + 2.0);
    const FitResult f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.n == 4);

    CHECK(fit_line({1.0}, {2.0}).n == 1);
    CHECK(fit_line({1.0}, {2.0}).slope == 0.0);
    const FitResult same_x = fit_line({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0});
    CHECK(same_x.slope == 0.0);
    CHECK(same_x.r2 == 0.0);

    const FitResult flat = fit_line({0.0, 1.0, 2.0}, {5.0, 5.0, 5.0});
    CHECK(flat.slope == 0.0);
    CHECK(flat.r2 == 1.0);
}

TEST_CASE("moisture decay beats the closed-form rate on a small grid") {
    RunConfig c;
    c.nx = c.ny = c.nz = 8;
    c.stepping.dt = 0.02;
    c.stepping.t_end = 2.0;
    c.stepping.snapshot_every = 1;
    c.seed = 3;

    const ExperimentResult r = exp_q_decay(c);
    CHECK(r.name == "decay");
    CHECK(r.verdict == Verdict::Pass);
    REQUIRE(!r.constants.empty());

    double slope = 0.0, threshold = 1.0;
    bool have_slope = false, have_thr = false;
    for (const auto& [k, v] : r.constants) {
        if (k == "lambda_fit") {
            slope = v;
            have_slope = true;
        }
        if (k == "threshold") {
            threshold = v;
            have_thr = true;
        }
    }
    REQUIRE(have_slope);
    REQUIRE(have_thr);
    // defaults: decay rate 1/(2 Rt4 + 2/beta) = 1/4, threshold -0.225
    CHECK(threshold == doctest::Approx(-0.225).epsilon(1e-12));
    CHECK(slope <= threshold);
    CHECK(!r.series_rows.empty());
    CHECK(r.fingerprint.size() == 16);
}

TEST_CASE("experiment dispatch rejects unknown names") {
    RunConfig c;
    CHECK_THROWS_AS(run_experiment("turbulence", c), ConfigError);
}

TEST_CASE("time regularity smoke run settles to a verdict") {
    RunConfig c;
    c.nx = c.ny = c.nz = 6;
    c.stepping.dt = 0.05;
    c.stepping.t_end = 2.0;
    c.stepping.snapshot_every = 1;
    c.seed = 9;
    c.params.q1.preset = ForcingSpec::Preset::Fourier;
    c.params.q1.amplitude = 0.3;

    const ExperimentResult r = exp_time_regularity(c);
    CHECK(r.name == "time_regularity");
    CHECK(r.verdict != Verdict::Fail);
    bool has_q = false;
    for (const auto& [k, v] : r.constants) {
        if (k == "rho3_dt" || k == "rho3_dt_half") {
            CHECK(std::isfinite(v));
            has_q = true;
        }
    }
    CHECK(has_q);
}
