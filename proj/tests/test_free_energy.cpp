#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncsum/coloring.hpp"
#include "ncsum/errors.hpp"
#include "ncsum/free_energy.hpp"
#include "ncsum/ising1d.hpp"
#include "oracles.hpp"

using namespace ncsum;

namespace {

// G(lambda) with the spectrum taken from the textbook 2x2 formulas in long
// double and a fixed 10000-term sum.
long double reference_G(double p, double lambda) {
    using ld = long double;
    const ld h = 0.5L * std::log(static_cast<ld>(p) / (1 - static_cast<ld>(p)));
    const ld el = std::exp(static_cast<ld>(lambda));
    const ld a = el * std::exp(h), b = 1 / el, d = el * std::exp(-h);
    const ld root = std::sqrt(std::sinh(h) * std::sinh(h) + std::exp(-4 * static_cast<ld>(lambda)));
    const ld lp = el * (std::cosh(h) + root), lm = el * (std::cosh(h) - root);
    (void)d;
    ld x = b, y = lp - a;
    const ld n = std::sqrt(x * x + y * y);
    x /= n;
    y /= n;
    const ld op = std::pow(std::exp(h / 2) * x + std::exp(-h / 2) * y, 2);
    const ld om = 2 * std::cosh(h) - op;
    ld g = 0, rn = 1;
    for (int k = 1; k <= 10000; ++k) {
        rn *= lm / lp;
        g += std::ldexp(std::log1p(om / op * rn), -k);
    }
    return g / 2;
}

} // namespace

TEST_CASE("closed form at p = 1/2") {
    const auto m = make_model(0.5);
    CHECK(free_energy(m, 1.0) == doctest::Approx(0.4337808304830271).epsilon(1e-15));
    for (double lambda = -5; lambda <= 5; lambda += 0.25)
        CHECK(std::abs(free_energy(m, lambda) - std::log(std::cosh(lambda))) < 1e-13);
    const auto g = g_series(m, 1.3);
    CHECK(g.value == 0.0);
    CHECK(g.terms_used == 0);
}

TEST_CASE("series vanishes at lambda = 0") {
    for (double p : {0.1, 0.3, 0.77}) {
        const auto g = g_series(make_model(p), 0.0);
        CHECK(g.value == 0.0);
        CHECK(free_energy(make_model(p), 0.0) == doctest::Approx(0.0).epsilon(1e-15).scale(1));
    }
}

TEST_CASE("series agrees with a long reference sum") {
    for (double p : {0.3, 0.1, 0.85})
        for (double lambda : {1.0, -1.0, 0.4, -2.5, 3.0}) {
            const auto g = g_series(make_model(p), lambda);
            CHECK(std::abs(g.value - reference_G(p, lambda)) < 1e-13);
            CHECK(g.terms_used > 0);
            CHECK(g.terms_used <= 200);
        }
    // A hard cap truncates.
    const auto capped = g_series(make_model(0.3, 0.0, 3), 1.0);
    CHECK(capped.terms_used == 3);
}

TEST_CASE("independent pair free energy") {
    CHECK(free_energy_independent(0.3, 1.0) == doctest::Approx(std::log(0.58 * std::exp(1.0) + 0.42 / std::exp(1.0))));
    CHECK(free_energy_independent(0.3, 0.0) == 0.0);
    for (double lambda : {-4.0, -0.3, 2.0})
        CHECK(free_energy_independent(0.5, lambda) == doctest::Approx(std::log(std::cosh(lambda))).epsilon(1e-14));
    CHECK(std::isfinite(free_energy_independent(0.01, 600.0)));
}

TEST_CASE("finite-N mgf matches 2^{2N} enumeration") {
    SplitMix64 rng(99);
    for (int N = 1; N <= 9; ++N) {
        const oracle::NonconvHistogram hist(N);
        for (int t = 0; t < 10; ++t) {
            const double p = 0.05 + 0.9 * rng.uniform();
            const double lambda = -3 + 6 * rng.uniform();
            const long double pm = hist.log_mgf_pm(p, lambda), zo = hist.log_mgf_01(p, lambda);
            const double a = N * finite_n_log_mgf(make_model(p), N, lambda);
            const double b = N * finite_n_log_mgf_01(p, N, lambda);
            REQUIRE(std::abs(a - pm) <= 1e-12 * std::max<long double>(1, std::abs(pm)));
            REQUIRE(std::abs(b - zo) <= 1e-12 * std::max<long double>(1, std::abs(zo)));
        }
    }
}

TEST_CASE("lattice-gas path agrees with a direct block product") {
    for (double p : {0.2, 0.5, 0.9})
        for (double lambda : {-1.5, 0.7, 2.0})
            for (std::int64_t N : {15, 64, 1000}) {
                long double direct = 0;
                for (std::int64_t m = 1; m <= N; m += 2) {
                    const int sites = std::bit_width(static_cast<std::uint64_t>(N / m)) + 1;
                    direct += oracle::chain_log_mgf_01(lambda, p, sites);
                }
                CHECK(std::abs(N * finite_n_log_mgf_01(p, N, lambda) - direct) < 1e-11 * std::abs(direct) + 1e-12);
            }
}

TEST_CASE("finite-N variance is the closed form for every N") {
    for (double p : {0.3, 0.5, 0.8})
        for (std::int64_t N : {1, 2, 7, 100, 1024, 4097}) {
            const auto model = make_model(p);
            const double v = (finite_n_log_mgf(model, N, 1e-3) - 2 * finite_n_log_mgf(model, N, 0) +
                              finite_n_log_mgf(model, N, -1e-3)) / 1e-6;
            CHECK(v == doctest::Approx(oracle::variance_per_site(p, N)).epsilon(1e-5));
        }
}

TEST_CASE("variance") {
    CHECK(std::abs(variance(make_model(0.5)) - 1.0) < 1e-6);
    const auto m = make_model(0.3);
    CHECK(std::abs(variance(m) - oracle::variance_limit(0.3)) < 1e-6);
    CHECK(std::abs(variance(m, 1e-3) - variance(m, 1e-4)) < 1e-6);
}

TEST_CASE("convexity in lambda") {
    for (double p : {0.05, 0.3, 0.5, 0.9}) {
        const auto m = make_model(p);
        for (double lambda = -5; lambda <= 4.9; lambda += 0.05) {
            const double d2 = free_energy(m, lambda - 0.05) - 2 * free_energy(m, lambda) + free_energy(m, lambda + 0.05);
            REQUIRE(d2 >= -1e-9);
        }
    }
}

TEST_CASE("large couplings stay finite") {
    for (double lambda : {-700.0, -100.0, 100.0, 700.0}) {
        CHECK(std::isfinite(free_energy(make_model(0.2), lambda)));
        CHECK(std::isfinite(finite_n_log_mgf(make_model(0.2), 1000, lambda)));
    }
    CHECK_THROWS_AS(free_energy(make_model(0.2), 701.0), parameter_error);
    CHECK_THROWS_AS(make_model(0.0), parameter_error);
    CHECK_THROWS_AS(finite_n_log_mgf(make_model(0.5), 0, 1.0), parameter_error);
}
