#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "ncsum/coloring.hpp"

namespace ncsum {

// sum_{i=1}^{N} prod_{j=1}^{k} seq[j*i]. Needs seq.size() >= k*N.
std::int64_t nonconv_sum(const SpinSequence& seq, std::int64_t N, int k);

// nonconv_sum / N.
double nonconv_average(const SpinSequence& seq, std::int64_t N, int k);

// K(N, ell): number of i <= floor(N/ell) with sigma_i = ... = sigma_{ell*i} = 1.
// {0,1} sequences only.
std::int64_t count_K(const SpinSequence& seq, std::int64_t N, int ell);

// M(N): largest k with a witness i <= N/k of sigma_i = ... = sigma_{k*i} = 1,
// or 0 when no index in 1..N carries colour 1.
std::int64_t max_progression(const SpinSequence& seq, std::int64_t N);

// T(ell): ell * (smallest witness i), or nullopt when no witness fits in
// the sequence.
std::optional<std::int64_t> first_occurrence(const SpinSequence& seq, int ell);

struct ProgressionReport {
    std::int64_t N = 0;
    int ell = 0;
    std::int64_t K = 0;
    std::int64_t M = 0;
    // first_occurrence for ell' = 1..ell; nullopt means beyond the horizon.
    std::map<int, std::optional<std::int64_t>> T_values;
};

ProgressionReport progression_report(const SpinSequence& seq, std::int64_t N, int ell);

} // namespace ncsum
