#include "ncsum/progression_stats.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ncsum/errors.hpp"

namespace ncsum {

namespace {

void require_zero_one(const SpinSequence& seq, const char* op) {
    if (seq.alphabet() != Alphabet::zero_one)
        throw parameter_error(std::string(op) + " needs a {0,1} sequence");
}

void require_length(const SpinSequence& seq, std::int64_t needed, const char* op) {
    if (static_cast<std::int64_t>(seq.size()) < needed) {
        throw sequence_length_error(std::string(op) + ": sequence has " +
                                    std::to_string(seq.size()) + " spins, needs " +
                                    std::to_string(needed));
    }
}

std::int64_t checked_product(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw index_overflow_error("index k*N overflows int64");
    return out;
}

// Length of the run sigma_i = sigma_{2i} = ... = 1, capped at `cap` terms.
std::int64_t run_length(std::span<const std::int8_t> v, std::int64_t i, std::int64_t cap) {
    std::int64_t r = 0;
    while (r < cap && v[static_cast<std::size_t>((r + 1) * i - 1)] == 1) ++r;
    return r;
}

} // namespace

std::int64_t nonconv_sum(const SpinSequence& seq, std::int64_t N, int k) {
    if (N < 1) throw parameter_error("N must be positive");
    if (k < 1) throw parameter_error("k must be positive");
    require_length(seq, checked_product(k, N), "nonconv_sum");
    const auto v = seq.values();
    std::int64_t total = 0;
    for (std::int64_t i = 1; i <= N; ++i) {
        int prod = 1;
        for (std::int64_t j = i; j <= k * i && prod != 0; j += i) prod *= v[static_cast<std::size_t>(j - 1)];
        total += prod;
    }
    return total;
}

double nonconv_average(const SpinSequence& seq, std::int64_t N, int k) {
    return static_cast<double>(nonconv_sum(seq, N, k)) / static_cast<double>(N);
}

std::int64_t count_K(const SpinSequence& seq, std::int64_t N, int ell) {
    require_zero_one(seq, "count_K");
    if (N < 1) throw parameter_error("N must be positive");
    if (ell < 1) throw parameter_error("ell must be positive");
    const std::int64_t terms = N / ell;
    require_length(seq, checked_product(ell, terms), "count_K");
    const auto v = seq.values();
    std::int64_t count = 0;
    for (std::int64_t i = 1; i <= terms; ++i) {
        if (run_length(v, i, ell) == ell) ++count;
    }
    return count;
}

std::int64_t max_progression(const SpinSequence& seq, std::int64_t N) {
    require_zero_one(seq, "max_progression");
    if (N < 1) throw parameter_error("N must be positive");
    require_length(seq, N, "max_progression");
    const auto v = seq.values();
    std::int64_t best = 0;
    // A witness i for length k needs i <= N/k, so only i <= N/(best+1) can improve.
    for (std::int64_t i = 1; i <= N / (best + 1); ++i) {
        best = std::max(best, run_length(v, i, N / i));
    }
    return best;
}

std::optional<std::int64_t> first_occurrence(const SpinSequence& seq, int ell) {
    require_zero_one(seq, "first_occurrence");
    if (ell < 1) throw parameter_error("ell must be positive");
    const auto v = seq.values();
    const auto n = static_cast<std::int64_t>(v.size());
    for (std::int64_t i = 1; i <= n / ell; ++i) {
        if (run_length(v, i, ell) == ell) return ell * i;
    }
    return std::nullopt;
}

ProgressionReport progression_report(const SpinSequence& seq, std::int64_t N, int ell) {
    ProgressionReport r;
    r.N = N;
    r.ell = ell;
    r.K = count_K(seq, N, ell);
    r.M = max_progression(seq, N);
    for (int l = 1; l <= ell; ++l) r.T_values[l] = first_occurrence(seq, l);
    return r;
}

} // namespace ncsum
