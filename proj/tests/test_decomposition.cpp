#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "ncsum/decomposition.hpp"
#include "ncsum/errors.hpp"
#include "ncsum/progression_stats.hpp"
#include "oracles.hpp"

using namespace ncsum;

TEST_CASE("polymer shapes") {
    const auto p2 = polymer(2);
    CHECK(p2.primes == std::vector<std::int64_t>{2});
    CHECK(p2.vertices == std::vector<std::vector<int>>{{0}, {1}});
    const auto p6 = polymer(6);
    CHECK(p6.primes == std::vector<std::int64_t>{2, 3, 5});
    CHECK(p6.vertices[3] == std::vector<int>{2, 0, 0});
    CHECK(p6.vertices[5] == std::vector<int>{1, 1, 0});
    CHECK_THROWS_AS(polymer(1), parameter_error);
}

TEST_CASE("k = 2 block sizes for N = 7") {
    CHECK(block_sizes_k2(7) == std::vector<int>{3, 2, 1, 1});
    const auto d = decompose(7, 2);
    REQUIRE(d.blocks.size() == 4);
    CHECK(d.blocks[0].m == 1);
    CHECK(d.blocks[0].term_index == std::vector<std::int64_t>{1, 2, 4});
    CHECK(d.blocks[0].sites == std::vector<std::int64_t>{1, 2, 4, 8});
}

TEST_CASE("histogram matches block sizes") {
    for (std::int64_t N = 1; N <= 3000; ++N) {
        const auto sizes = block_sizes_k2(N);
        const auto hist = block_size_histogram_k2(N);
        std::vector<std::int64_t> direct(hist.size(), 0);
        for (int s : sizes) {
            REQUIRE(static_cast<std::size_t>(s) < direct.size());
            ++direct[s];
        }
        REQUIRE(direct == hist);
    }
}

TEST_CASE("block maps partition 1..N") {
    for (int k = 2; k <= 7; ++k) {
        for (std::int64_t N : {1, 2, 3, 17, 64, 255, 500}) {
            const auto d = decompose(N, k);
            std::vector<int> seen(N + 1, 0);
            for (const auto& b : d.blocks) {
                for (const auto& p : d.shape.primes) REQUIRE(b.m % p != 0);
                for (auto i : b.term_index) ++seen[i];
            }
            for (std::int64_t i = 1; i <= N; ++i) REQUIRE(seen[i] == 1);
        }
    }
}

TEST_CASE("blocks touch disjoint sites") {
    for (int k = 2; k <= 6; ++k) {
        const auto d = decompose(300, k);
        std::set<std::int64_t> all;
        std::size_t total = 0;
        for (const auto& b : d.blocks) {
            all.insert(b.sites.begin(), b.sites.end());
            total += b.sites.size();
        }
        CHECK(all.size() == total);
    }
}

TEST_CASE("block Hamiltonians sum to S_N") {
    for (int k = 2; k <= 7; ++k) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const std::int64_t N = 1 + static_cast<std::int64_t>((seed * 37) % 400);
            const auto s = sample(ColoringSource::iid_pm(0.45), k * N, seed);
            const auto d = decompose(N, k);
            std::int64_t total = 0;
            for (const auto& b : d.blocks) total += block_hamiltonian(s, b, d.shape);
            REQUIRE(total == oracle::naive_sum(s, N, k));
        }
    }
}

TEST_CASE("mixed sum decomposition") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::int64_t N = 1 + static_cast<std::int64_t>((seed * 73) % 1000);
        const auto s = sample(ColoringSource::iid_pm(0.5), 3 * N, seed);
        std::int64_t direct = 0;
        for (std::int64_t i = 1; i <= N; ++i) direct += s.at(i) * (s.at(2 * i) + s.at(3 * i));
        const auto mixed = decompose_mixed(s, N);
        REQUIRE(mixed.total == direct);
        std::int64_t sum = 0;
        for (const auto& b : mixed.blocks) {
            REQUIRE(std::gcd(b.m, std::int64_t{6}) == 1);
            sum += b.value;
        }
        REQUIRE(sum == direct);
    }
}

TEST_CASE("grid decomposition") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::int64_t N = 1 + static_cast<std::int64_t>(seed * 11 % 64);
        const auto g = sample_grid(0.4, 2 * N, seed);
        std::int64_t direct = 0;
        for (std::int64_t i = 1; i <= N; ++i)
            for (std::int64_t j = 1; j <= N; ++j) direct += g.at(i, j) * (g.at(2 * i, j) + g.at(i, 2 * j));
        const auto dec = decompose_grid(g, N);
        REQUIRE(dec.total == direct);
        std::int64_t sum = 0;
        for (const auto& b : dec.blocks) {
            REQUIRE(b.m_row % 2 == 1);
            REQUIRE(b.m_col % 2 == 1);
            sum += b.value;
        }
        REQUIRE(sum == direct);
    }
    CHECK_THROWS_AS(decompose_grid(sample_grid(0.5, 10, 0), 6), sequence_length_error);
}

TEST_CASE("k = 3 anchors of the unit block") {
    const auto d = decompose(10, 3);
    CHECK(polymer(3).vertices == std::vector<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}});
    const auto& b = d.blocks.front();
    REQUIRE(b.m == 1);
    std::set<std::int64_t> idx(b.term_index.begin(), b.term_index.end());
    CHECK(idx == std::set<std::int64_t>{1, 2, 3, 4, 6, 8, 9});
    for (std::size_t t = 0; t < b.terms(); ++t) {
        const auto a = b.anchor(t);
        std::int64_t v = 1;
        for (int i = 0; i < a[0]; ++i) v *= 2;
        for (int i = 0; i < a[1]; ++i) v *= 3;
        CHECK(v == b.term_index[t]);
    }
}

TEST_CASE("size law extremes and trivial sums") {
    for (std::int64_t N : {1, 2, 3, 1000, 65536, 999999}) {
        const auto sizes = block_sizes_k2(N);
        CHECK(std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0}) == N);
        CHECK(*std::max_element(sizes.begin(), sizes.end()) == std::bit_width(static_cast<std::uint64_t>(N)));
    }
    CHECK(block_sizes_k2(1) == std::vector<int>{1});
    const SpinSequence ones(Alphabet::plus_minus, std::vector<std::int8_t>(30, 1));
    CHECK(decompose_mixed(ones, 5).total == 10);
    const auto single = decompose_mixed(ones, 1);
    CHECK(single.blocks.size() == 1);
    CHECK(single.blocks[0].m == 1);
    CHECK(decompose_grid(SpinGrid(4, std::vector<std::int8_t>(16, 1)), 2).total == 8);
    const SpinSequence long_ones(Alphabet::zero_one, std::vector<std::int8_t>(200, 1));
    const auto d = decompose(50, 4);
    for (const auto& b : d.blocks) CHECK(block_hamiltonian(long_ones, b, d.shape) == static_cast<std::int64_t>(b.terms()));
}
