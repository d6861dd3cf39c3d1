#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "expsum/errors.hpp"
#include "expsum/optimizer.hpp"

#include "checks.hpp"
#include "oracles.hpp"

using expsum::Complex;
using expsum::ConjectureSummary;
using expsum::explore_conjecture;
using expsum::FrequencySet;
using expsum::GridSpec;
using expsum::minimize_phi;
using expsum::OptimizeConfig;
using expsum::OptimizeResult;
using expsum::phi;
using expsum::Signal;
using expsum::solve_v0;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kV0 = 0.74201929640710318;
constexpr double kPhiMin = 0.47493838597788583;

} // namespace

TEST_CASE("v0 solves its defining equation") {
    const double v0 = solve_v0();
    CHECK(std::fabs(v0 - 0.742019) <= 1e-5);
    const double residual =
        std::sin(kPi * v0) * kPi * v0 + std::cos(kPi * v0) - 1.0;
    CHECK(std::fabs(residual) < 1e-13);
    // the two closed forms of the minimal deflection coincide at v0
    const double via_cos = std::cos(kPi * v0) * std::cos(kPi * v0);
    const double via_limit =
        1.0 - std::pow(1.0 - std::cos(kPi * v0), 2) / (kPi * kPi * v0 * v0);
    CHECK(std::fabs(via_cos - via_limit) <= 1e-12);
    CHECK(std::fabs(via_cos - kPhiMin) <= 1e-12);
}

TEST_CASE("one-frequency search lands on the stationary pair") {
    OptimizeConfig config;
    config.n = 1;
    config.starts = 32;
    config.seed = 7;
    const OptimizeResult result = minimize_phi(Signal::sign(), config);

    CHECK(result.best_phi <= kPhiMin + 1e-4);
    CHECK(result.best_phi >= 0.0);
    const Complex lambda = result.best_freqs.lambdas[0];
    const double to_plus = std::abs(lambda - Complex{0.0, kV0});
    const double to_minus = std::abs(lambda + Complex{0.0, kV0});
    CHECK(std::min(to_plus, to_minus) <= 1e-3);
    CHECK(result.starts_converged > 0);
    CHECK(result.evaluations > 0);
    CHECK(std::fabs(result.fit.f_min - result.best_phi) <= 1e-12);
}

TEST_CASE("the search is deterministic for a fixed config") {
    OptimizeConfig config;
    config.n = 1;
    config.starts = 8;
    config.seed = 123;
    const Signal sign = Signal::sign();
    const OptimizeResult first = minimize_phi(sign, config);
    const OptimizeResult second = minimize_phi(sign, config);
    CHECK(first.best_phi == second.best_phi);
    CHECK(first.evaluations == second.evaluations);
    CHECK(first.starts_converged == second.starts_converged);
    REQUIRE(first.best_freqs.lambdas.size() ==
            second.best_freqs.lambdas.size());
    CHECK(first.best_freqs.lambdas[0] == second.best_freqs.lambdas[0]);
}

TEST_CASE("reported best is reproduced by an independent evaluation") {
    OptimizeConfig config;
    config.n = 2;
    config.starts = 12;
    config.seed = 99;
    const Signal sign = Signal::sign();
    const OptimizeResult result = minimize_phi(sign, config);
    CHECK(std::fabs(phi(result.best_freqs, sign) - result.best_phi) <=
          1e-12);
}

TEST_CASE("two frequencies beat one and abandon the n=1 spectrum") {
    const Signal sign = Signal::sign();
    OptimizeConfig config;
    config.seed = 7;

    config.n = 1;
    config.starts = 16;
    const double best_one = minimize_phi(sign, config).best_phi;

    config.n = 2;
    config.starts = 64;
    const double best_two = minimize_phi(sign, config).best_phi;

    CHECK(best_two <= best_one + 1e-9);
    CHECK(best_two < kPhiMin - 0.1);

    // freeze one frequency at +i v0 and scan the second: even then the
    // pair dives far below the one-frequency minimum, so the n=1
    // spectral point does not survive into n=2
    double best_scan = HUGE_VAL;
    for (int k = 0; k <= 120; ++k) {
        const double v = -3.0 + 6.0 * double(k) / 120.0;
        FrequencySet pair;
        pair.lambdas = {Complex{0.0, kV0}, Complex{0.0, v}};
        best_scan = std::min(best_scan, phi(pair, sign));
    }
    CHECK(best_scan < kPhiMin - 0.05);
}

TEST_CASE("a signal inside the span is matched to rounding") {
    std::vector<double> grid(101);
    std::vector<Complex> values(101, Complex{1.0, 0.0});
    for (int i = 0; i <= 100; ++i) {
        grid[std::size_t(i)] = -kPi + 2.0 * kPi * double(i) / 100.0;
    }
    grid.front() = -kPi;
    grid.back() = kPi;
    const Signal constant = Signal::sampled(std::move(grid), std::move(values));

    OptimizeConfig config;
    config.n = 1;
    config.starts = 12;
    config.seed = 5;
    const OptimizeResult result = minimize_phi(constant, config);
    CHECK(result.best_phi <= 1e-8);
    CHECK(std::abs(result.best_freqs.lambdas[0]) <= 1e-2);
}

TEST_CASE("degenerate start boxes still run") {
    OptimizeConfig config;
    config.n = 1;
    config.starts = 2;
    config.seed = 1;
    config.start_box = {0.0, 0.0, 2.0, 2.0};
    const OptimizeResult result = minimize_phi(Signal::sign(), config);
    CHECK(result.best_phi >= 0.0);
    CHECK(result.best_phi <= 1.0);
}

TEST_CASE("config validation") {
    const Signal sign = Signal::sign();
    OptimizeConfig config;
    config.n = 0;
    CHECK_THROWS_AS((void)minimize_phi(sign, config), std::invalid_argument);
    config.n = 1;
    config.starts = 0;
    CHECK_THROWS_AS((void)minimize_phi(sign, config), std::invalid_argument);
    config.starts = 1;
    config.start_box = {1.0, -1.0, 0.0, 0.0};
    CHECK_THROWS_AS((void)minimize_phi(sign, config), std::invalid_argument);
    config.start_box = {};
    config.simplex_tol = 0.0;
    CHECK_THROWS_AS((void)minimize_phi(sign, config), std::invalid_argument);
    config.simplex_tol = 1e-10;
    config.max_iters = 0;
    CHECK_THROWS_AS((void)minimize_phi(sign, config), std::invalid_argument);
}

TEST_CASE("conjecture harness reports rather than fails") {
    GridSpec grid;
    grid.u_steps = 5;
    grid.v_steps = 5;
    const Signal sign = Signal::sign();
    const ConjectureSummary summary = explore_conjecture(grid, sign);

    // 25 grid points, all pairwise separated: 300 pairs
    CHECK(summary.pairs_evaluated == 300);

    // the grid contains the conjugate pair (i, -i), which sits far below
    // the coincident-pair limit; it must be flagged, not rejected
    CHECK(!summary.below_quarter.empty());
    CHECK(summary.grid_min.phi <= 0.19);
    for (const auto& finding : summary.below_quarter) {
        CAPTURE(finding.lambda1.real());
        CAPTURE(finding.lambda1.imag());
        CHECK(finding.phi < 0.25);
        FrequencySet pair;
        pair.lambdas = {finding.lambda1, finding.lambda2};
        CHECK(std::fabs(phi(pair, sign) - finding.phi) <= 1e-12);
    }

    // frozen values of the pure conjugate pairs
    REQUIRE(summary.shrinking.size() == 3);
    CHECK(summary.shrinking[0].first == 0.5);
    CHECK(std::fabs(summary.shrinking[0].second - 0.189430530861297828) <=
          1e-9);
    CHECK(std::fabs(summary.shrinking[1].second - 0.247531812968808243) <=
          1e-9);
    CHECK(std::fabs(summary.shrinking[2].second - 0.249901302569743272) <=
          1e-9);

    // phi({i, -i}) = 1 - 8/pi^2 exactly; it must appear among the flags
    bool found_fourier_pair = false;
    for (const auto& finding : summary.below_quarter) {
        const bool straight =
            std::abs(finding.lambda1 - Complex{0.0, 1.0}) < 1e-12 &&
            std::abs(finding.lambda2 + Complex{0.0, 1.0}) < 1e-12;
        const bool flipped =
            std::abs(finding.lambda1 + Complex{0.0, 1.0}) < 1e-12 &&
            std::abs(finding.lambda2 - Complex{0.0, 1.0}) < 1e-12;
        if (straight || flipped) {
            found_fourier_pair = true;
            CHECK(std::fabs(finding.phi - (1.0 - 8.0 / (kPi * kPi))) <=
                  1e-12);
        }
    }
    CHECK(found_fourier_pair);
}

TEST_CASE("conjecture grid validation") {
    const Signal sign = Signal::sign();
    GridSpec grid;
    grid.u_steps = 0;
    CHECK_THROWS_AS((void)explore_conjecture(grid, sign),
                    std::invalid_argument);
    grid = {};
    grid.v_min = 3.0;
    grid.v_max = -3.0;
    CHECK_THROWS_AS((void)explore_conjecture(grid, sign),
                    std::invalid_argument);
}
