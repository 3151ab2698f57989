#include "ncsum/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "ncsum/errors.hpp"

namespace ncsum {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw index_overflow_error("block index overflows int64");
    return out;
}

bool coprime_to(std::int64_t m, const std::vector<std::int64_t>& primes) {
    for (auto p : primes) {
        if (m % p == 0) return false;
    }
    return true;
}

void require_length(std::int64_t have, std::int64_t needed, const char* op) {
    if (have < needed) {
        throw sequence_length_error(std::string(op) + ": input covers " + std::to_string(have) +
                                    " indices, needs " + std::to_string(needed));
    }
}

// Appends every exponent vector l with base * prod primes[t]^l[t] <= N,
// iterating the last prime outermost.
void enumerate_anchors(const std::vector<std::int64_t>& primes, std::int64_t N, std::size_t dim,
                       std::int64_t value, std::vector<int>& current, Block& block) {
    if (dim == 0) {
        block.term_exponents.insert(block.term_exponents.end(), current.begin(), current.end());
        block.term_index.push_back(value);
        return;
    }
    const std::size_t t = dim - 1;
    const std::int64_t p = primes[t];
    current[t] = 0;
    for (std::int64_t v = value;; v *= p) {
        enumerate_anchors(primes, N, t, v, current, block);
        if (v > N / p) break;
        ++current[t];
    }
    current[t] = 0;
}

} // namespace

PolymerShape polymer(int k) {
    if (k < 2) throw parameter_error("progression size k must be at least 2");
    PolymerShape shape;
    shape.k = k;
    for (std::int64_t c = 2; c <= k; ++c) {
        bool prime = true;
        for (std::int64_t d = 2; d * d <= c; ++d) {
            if (c % d == 0) {
                prime = false;
                break;
            }
        }
        if (prime) shape.primes.push_back(c);
    }
    for (std::int64_t j = 1; j <= k; ++j) {
        std::vector<int> e(shape.primes.size(), 0);
        std::int64_t rest = j;
        for (std::size_t t = 0; t < shape.primes.size(); ++t) {
            while (rest % shape.primes[t] == 0) {
                rest /= shape.primes[t];
                ++e[t];
            }
        }
        shape.vertices.push_back(std::move(e));
    }
    return shape;
}

std::vector<int> block_sizes_k2(std::int64_t N) {
    if (N < 1) throw parameter_error("N must be positive");
    std::vector<int> sizes;
    sizes.reserve(static_cast<std::size_t>((N + 1) / 2));
    for (std::int64_t m = 1; m <= N; m += 2) {
        // floor(log2(N/m)) == floor(log2(floor(N/m))) for N/m >= 1.
        sizes.push_back(std::bit_width(static_cast<std::uint64_t>(N / m)));
    }
    return sizes;
}

std::vector<std::int64_t> block_size_histogram_k2(std::int64_t N) {
    if (N < 1) throw parameter_error("N must be positive");
    const int top = std::bit_width(static_cast<std::uint64_t>(N));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(top) + 1, 0);
    const auto odd_up_to = [](std::int64_t b) { return (b + 1) / 2; };
    for (int M = 1; M <= top; ++M) {
        counts[static_cast<std::size_t>(M)] = odd_up_to(N >> (M - 1)) - odd_up_to(N >> M);
    }
    return counts;
}

BlockDecomposition decompose(std::int64_t N, int k) {
    if (N < 1) throw parameter_error("N must be positive");
    BlockDecomposition d;
    d.N = N;
    d.k = k;
    d.shape = polymer(k);
    checked_mul(N, k);  // sites reach up to k*N

    const auto& primes = d.shape.primes;
    const std::size_t dim = primes.size();
    std::vector<std::int64_t> vertex_values;
    for (std::int64_t j = 1; j <= k; ++j) vertex_values.push_back(j);

    std::vector<int> current(dim, 0);
    for (std::int64_t m = 1; m <= N; ++m) {
        if (!coprime_to(m, primes)) continue;
        Block b;
        b.m = m;
        b.dimension = dim;
        enumerate_anchors(primes, N, dim, m, current, b);
        b.sites.reserve(b.terms() * vertex_values.size());
        for (auto i : b.term_index) {
            for (auto j : vertex_values) b.sites.push_back(i * j);
        }
        std::sort(b.sites.begin(), b.sites.end());
        b.sites.erase(std::unique(b.sites.begin(), b.sites.end()), b.sites.end());
        d.blocks.push_back(std::move(b));
    }
    return d;
}

std::int64_t block_hamiltonian(const SpinSequence& seq, const Block& block, const PolymerShape& shape) {
    if (block.dimension != shape.dimension())
        throw parameter_error("block and polymer dimensions differ");
    if (!block.sites.empty())
        require_length(static_cast<std::int64_t>(seq.size()), block.sites.back(), "block_hamiltonian");

    // m * prod p^(l + x) = (m * prod p^l) * (integer of vertex x); vertex x of
    // the shape is the exponent vector of j = 1..k.
    const auto v = seq.values();
    std::int64_t total = 0;
    for (auto anchor : block.term_index) {
        int prod = 1;
        for (std::int64_t j = 1; j <= shape.k; ++j) prod *= v[static_cast<std::size_t>(anchor * j - 1)];
        total += prod;
    }
    return total;
}

MixedDecomposition decompose_mixed(const SpinSequence& seq, std::int64_t N) {
    if (N < 1) throw parameter_error("N must be positive");
    require_length(static_cast<std::int64_t>(seq.size()), checked_mul(3, N), "decompose_mixed");
    const auto tau = [&](std::int64_t idx) { return int(seq.values()[static_cast<std::size_t>(idx - 1)]); };

    MixedDecomposition out;
    for (std::int64_t m = 1; m <= N; ++m) {
        if (m % 2 == 0 || m % 3 == 0) continue;
        std::int64_t sum = 0;
        // tau_{a,b} = sigma_{m 2^a 3^b}; i walks the anchors with index <= N.
        for (std::int64_t row = m; row <= N; row *= 3) {
            for (std::int64_t i = row; i <= N; i *= 2) sum += tau(i) * (tau(2 * i) + tau(3 * i));
        }
        out.blocks.push_back({m, sum});
        out.total += sum;
    }
    return out;
}

SpinGrid::SpinGrid(std::int64_t extent, std::vector<std::int8_t> values)
    : extent_(extent), values_(std::move(values)) {
    if (extent_ < 0 || static_cast<std::int64_t>(values_.size()) != extent_ * extent_)
        throw parameter_error("grid storage does not match extent^2");
    for (auto v : values_) {
        if (v != 1 && v != -1) throw parameter_error("grid spins must be +1 or -1");
    }
}

SpinGrid sample_grid(double p, std::int64_t extent, std::uint64_t seed) {
    if (!(p > 0.0 && p < 1.0)) throw parameter_error("p must lie in (0,1)");
    SplitMix64 rng(seed);
    std::vector<std::int8_t> values(static_cast<std::size_t>(extent * extent));
    for (auto& v : values) v = rng.uniform() < p ? 1 : -1;
    return SpinGrid(extent, std::move(values));
}

GridDecomposition decompose_grid(const SpinGrid& grid, std::int64_t N) {
    if (N < 1) throw parameter_error("N must be positive");
    require_length(grid.extent(), checked_mul(2, N), "decompose_grid");

    GridDecomposition out;
    for (std::int64_t mr = 1; mr <= N; mr += 2) {
        for (std::int64_t mc = 1; mc <= N; mc += 2) {
            std::int64_t sum = 0;
            // nu_{a,b} = sigma_{mr 2^a, mc 2^b}
            for (std::int64_t i = mr; i <= N; i *= 2) {
                for (std::int64_t j = mc; j <= N; j *= 2)
                    sum += grid.at(i, j) * (grid.at(2 * i, j) + grid.at(i, 2 * j));
            }
            out.blocks.push_back({mr, mc, sum});
            out.total += sum;
        }
    }
    return out;
}

} // namespace ncsum
