#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncsum/errors.hpp"
#include "ncsum/progression_stats.hpp"
#include "oracles.hpp"

using namespace ncsum;

TEST_CASE("small worked example") {
    // sigma = 1 1 0 1 1 0 0 1: witnesses of length 2 are i = 1, 2, 4.
    const SpinSequence s(Alphabet::zero_one, {1, 1, 0, 1, 1, 0, 0, 1});
    CHECK(count_K(s, 8, 2) == 3);
    CHECK(count_K(s, 8, 3) == 0);
    CHECK(max_progression(s, 8) == 2);
    CHECK(first_occurrence(s, 1) == 1);
    CHECK(first_occurrence(s, 2) == 2);
    CHECK(first_occurrence(s, 4) == std::nullopt);
    CHECK(nonconv_sum(s, 4, 2) == 1 + 1 + 0 + 1);
}

TEST_CASE("all zeros and all ones") {
    const SpinSequence zeros(Alphabet::zero_one, std::vector<std::int8_t>(64, 0));
    CHECK(max_progression(zeros, 64) == 0);
    CHECK(count_K(zeros, 64, 1) == 0);
    CHECK(first_occurrence(zeros, 1) == std::nullopt);
    const SpinSequence ones(Alphabet::zero_one, std::vector<std::int8_t>(64, 1));
    CHECK(max_progression(ones, 64) == 64);
    CHECK(count_K(ones, 64, 5) == 12);
    CHECK(first_occurrence(ones, 7) == 7);
}

TEST_CASE("agreement with brute force") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const double p = 0.3 + 0.5 * static_cast<double>(seed % 7) / 6;
        const auto s = sample(ColoringSource::iid_01(p), 240, seed);
        const std::int64_t N = 1 + static_cast<std::int64_t>(seed % 120);
        REQUIRE(max_progression(s, N) == oracle::naive_M(s, N));
        for (int ell = 1; ell <= 8; ++ell) {
            REQUIRE(count_K(s, N, ell) == oracle::naive_K(s, N, ell));
            REQUIRE(first_occurrence(s, ell) == oracle::naive_T(s, ell));
        }
        const auto pm = convert(s, Alphabet::plus_minus);
        for (int k = 1; k <= 4; ++k) {
            REQUIRE(nonconv_sum(pm, 240 / k, k) == oracle::naive_sum(pm, 240 / k, k));
            REQUIRE(nonconv_sum(s, 240 / k, k) == oracle::naive_sum(s, 240 / k, k));
        }
    }
}

TEST_CASE("event identity K = 0 iff M < ell iff T > N") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto s = sample(ColoringSource::iid_01(0.6), 400, seed);
        for (std::int64_t N : {10, 57, 200, 400}) {
            const auto M = max_progression(s, N);
            for (int ell = 1; ell <= 10; ++ell) {
                const bool k_zero = count_K(s, N, ell) == 0;
                const bool m_short = M < ell;
                const auto T = first_occurrence(s, ell);
                const bool t_late = !T || *T > N;
                REQUIRE(k_zero == m_short);
                REQUIRE(m_short == t_late);
            }
        }
    }
}

TEST_CASE("K is non-increasing in ell and non-decreasing in N") {
    const auto s = sample(ColoringSource::iid_01(0.7), 1000, 11);
    for (std::int64_t N = 10; N <= 1000; N += 33) {
        for (int ell = 1; ell < 12; ++ell) REQUIRE(count_K(s, N, ell + 1) <= count_K(s, N, ell));
        REQUIRE(count_K(s, N, 3) <= count_K(s, N + 33 > 1000 ? 1000 : N + 33, 3));
    }
}

TEST_CASE("report collects T for every ell") {
    const auto s = sample(ColoringSource::iid_01(0.5), 100, 2);
    const auto r = progression_report(s, 100, 4);
    CHECK(r.T_values.size() == 4);
    for (int ell = 1; ell <= 4; ++ell) CHECK(r.T_values.at(ell) == first_occurrence(s, ell));
    CHECK(r.K == count_K(s, 100, 4));
    CHECK(r.M == max_progression(s, 100));
}

TEST_CASE("argument errors") {
    const auto s = sample(ColoringSource::iid_01(0.5), 10, 0);
    CHECK_THROWS_AS(nonconv_sum(s, 6, 2), sequence_length_error);
    CHECK_THROWS_AS(nonconv_sum(s, 3, 0), parameter_error);
    CHECK_THROWS_AS(count_K(s, 12, 2), sequence_length_error);
    CHECK(count_K(s, 11, 2) == count_K(s, 10, 2));
    CHECK_THROWS_AS(count_K(s, 5, 0), parameter_error);
    CHECK_THROWS_AS(max_progression(convert(s, Alphabet::plus_minus), 5), parameter_error);
    CHECK_THROWS_AS(nonconv_sum(s, INT64_MAX / 2, 3), index_overflow_error);
    CHECK_THROWS_AS(nonconv_sum(s, 0, 2), parameter_error);
}

TEST_CASE("K equals the scaled nonconventional average") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = sample(ColoringSource::iid_01(0.7), 600, seed);
        for (int ell = 1; ell <= 6; ++ell)
            for (std::int64_t N : {ell, 100, 600}) {
                const std::int64_t n = N / ell;
                REQUIRE(count_K(s, N, ell) == nonconv_sum(s, n, ell));
                REQUIRE(static_cast<double>(count_K(s, N, ell)) == doctest::Approx(n * nonconv_average(s, n, ell)));
            }
    }
}

TEST_CASE("monotonicity of M in N and of T in ell") {
    const auto s = sample(ColoringSource::iid_01(0.65), 2000, 21);
    for (std::int64_t N = 1; N < 2000; ++N) REQUIRE(max_progression(s, N) <= max_progression(s, N + 1));
    for (int ell = 1; ell < 20; ++ell) {
        const auto a = first_occurrence(s, ell), b = first_occurrence(s, ell + 1);
        if (!a) REQUIRE_FALSE(b);
        if (a && b) REQUIRE(*a <= *b);
    }
    const SpinSequence ones(Alphabet::zero_one, std::vector<std::int8_t>(6, 1));
    CHECK(nonconv_sum(ones, 3, 2) == 3);
    CHECK(nonconv_average(ones, 3, 2) == 1.0);
    CHECK(count_K(ones, 6, 2) == 3);
    CHECK(max_progression(ones, 6) == 6);
    const SpinSequence pm(Alphabet::plus_minus, {1, -1, 1, 1});
    CHECK(nonconv_sum(pm, 2, 2) == -2);
}
