#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ncsum/coloring.hpp"

namespace ncsum {

// Exponent vectors of 1..k over the primes p_1 < ... < p_d in {2..k}.
// vertices[j-1] is the vector of j, so vertices[0] is the origin.
struct PolymerShape {
    int k = 0;
    std::vector<std::int64_t> primes;
    std::vector<std::vector<int>> vertices;

    std::size_t dimension() const noexcept { return primes.size(); }
};

PolymerShape polymer(int k);

// Independent block of the decomposition, indexed by a base m coprime to
// every prime of the shape. Terms are the anchors l with m * prod p^l <= N;
// term_index[t] caches that product. Sites are all indices touched by the
// translated polymers, sorted.
struct Block {
    std::int64_t m = 0;
    std::size_t dimension = 0;
    std::vector<int> term_exponents;  // terms() * dimension, row-major
    std::vector<std::int64_t> term_index;
    std::vector<std::int64_t> sites;

    std::size_t terms() const noexcept { return term_index.size(); }
    std::span<const int> anchor(std::size_t t) const noexcept {
        return {term_exponents.data() + t * dimension, dimension};
    }
};

struct BlockDecomposition {
    std::int64_t N = 0;
    int k = 0;
    PolymerShape shape;
    std::vector<Block> blocks;
};

// M_l(N) = floor(log2(N/m)) + 1 for odd m = 2l-1 <= N, in increasing m.
std::vector<int> block_sizes_k2(std::int64_t N);

// counts[M] = number of odd m <= N with M_m(N) = M, from the dyadic
// interval bounds floor(N/2^M) < m <= floor(N/2^{M-1}).
std::vector<std::int64_t> block_size_histogram_k2(std::int64_t N);

BlockDecomposition decompose(std::int64_t N, int k);

std::int64_t block_hamiltonian(const SpinSequence& seq, const Block& block, const PolymerShape& shape);

struct BlockSum {
    std::int64_t m = 0;
    std::int64_t value = 0;
};

struct MixedDecomposition {
    std::int64_t total = 0;
    std::vector<BlockSum> blocks;
};

// sum_i sigma_i (sigma_{2i} + sigma_{3i}) over i <= N, evaluated block by block
// over m coprime to 6 with tau_{a,b} = sigma_{m 2^a 3^b}.
MixedDecomposition decompose_mixed(const SpinSequence& seq, std::int64_t N);

// Square {+1,-1} array sigma_{i,j}, 1 <= i, j <= extent, row-major.
class SpinGrid {
public:
    SpinGrid(std::int64_t extent, std::vector<std::int8_t> values);

    std::int64_t extent() const noexcept { return extent_; }
    int at(std::int64_t i, std::int64_t j) const noexcept {
        return values_[static_cast<std::size_t>((i - 1) * extent_ + (j - 1))];
    }

private:
    std::int64_t extent_;
    std::vector<std::int8_t> values_;
};

SpinGrid sample_grid(double p, std::int64_t extent, std::uint64_t seed);

struct GridBlockSum {
    std::int64_t m_row = 0;
    std::int64_t m_col = 0;
    std::int64_t value = 0;
};

struct GridDecomposition {
    std::int64_t total = 0;
    std::vector<GridBlockSum> blocks;
};

// sum_{i,j<=N} sigma_{i,j}(sigma_{2i,j} + sigma_{i,2j}), evaluated over blocks
// of odd parts (m_row, m_col) with nu_{a,b} = sigma_{m_row 2^a, m_col 2^b}.
GridDecomposition decompose_grid(const SpinGrid& grid, std::int64_t N);

} // namespace ncsum
