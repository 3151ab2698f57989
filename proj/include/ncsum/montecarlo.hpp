#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ncsum/coloring.hpp"

namespace ncsum {

// Replication r of every experiment draws its colouring from
// SplitMix64(stream_seed(seed, r)), so results do not depend on `workers`.
struct ExperimentConfig {
    ColoringSource source;
    std::int64_t N = 1000;
    int k = 2;
    std::int64_t samples = 1;
    std::uint64_t seed = 0;
    int workers = 1;
};

struct LlnResult {
    double mean = 0.0;    // average of A^k_N over replications
    double target = 0.0;  // (E sigma_0)^k
    double deviation = 0.0;
    std::vector<double> samples;
};

LlnResult lln_experiment(const ExperimentConfig& config);

struct ConcentrationPoint {
    std::int64_t N = 0;
    double center = 0.0;  // E(A^k_N): exact for i.i.d. sources, sample mean otherwise
    double tail = 0.0;    // empirical P(|A - E A| > t)
    bool tail_is_bound = false;  // no exceedances: tail is 0, fitted_C uses the 95% bound 3/samples
    double fitted_C = 0.0;       // -log(tail) / (N t^2); a lower bound when tail_is_bound
    std::vector<double> samples;
};

struct ConcentrationResult {
    double t = 0.0;
    std::vector<ConcentrationPoint> points;
    // Every empirical tail is strictly below the previous one (a point
    // without exceedances counts as 0).
    bool decays = false;
};

ConcentrationResult concentration_experiment(const ExperimentConfig& config, double t,
                                             const std::vector<std::int64_t>& horizons);

struct CltResult {
    double mean_per_site = 0.0;  // exact finite-N E(S_N)/N
    double sigma2 = 0.0;         // F''(0)
    double ks_distance = 0.0;
    std::vector<double> standardized;  // (S_N - N m_N)/sqrt(N), sorted
};

// Needs k = 2 and an i.i.d. +-1 source.
CltResult clt_experiment(const ExperimentConfig& config);

struct LogmaxPoint {
    std::int64_t N = 0;
    int ell = 0;  // ceil(c log N)
    double mean_K = 0.0;
    double mean_M_over_log_N = 0.0;
    double mean_M = 0.0;
    double var_M = 0.0;
    std::vector<std::int64_t> K_samples;
    std::vector<std::int64_t> M_samples;
};

struct LogmaxOptions {
    double c = 4.0;
    std::vector<std::int64_t> horizons{1000, 10000, 100000};
    int T_ell = 8;
    std::int64_t T_horizon = 1 << 17;
};

struct LogmaxResult {
    double c = 0.0;
    std::vector<LogmaxPoint> points;
    int T_ell = 0;
    std::vector<std::int64_t> T_samples;  // sorted; censored replications dropped
    std::int64_t T_censored = 0;
    double T_mean = 0.0;
    double T_ks_exponential = 0.0;  // KS distance of T / mean(T) to Exp(1)
};

// Needs a {0,1} source.
LogmaxResult logmax_experiment(const ExperimentConfig& config, const LogmaxOptions& options);

struct MgfResult {
    double lambda = 0.0;
    double estimate = 0.0;        // (1/N) log mean exp(lambda S_N)
    double standard_error = 0.0;  // bootstrap
};

// S_N = sum sigma_i sigma_{2i}, +-1 source.
MgfResult mgf_experiment(const ExperimentConfig& config, double lambda, int bootstrap_rounds = 200);

// Sample correlation of the k-block Hamiltonians of bases m_a and m_b.
double block_correlation_experiment(const ExperimentConfig& config, std::int64_t m_a, std::int64_t m_b);

// Kolmogorov-Smirnov sup distance between the empirical law of `sorted` and
// a continuous CDF.
template <class Cdf>
double ks_distance(const std::vector<double>& sorted, Cdf&& cdf) {
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = above > d ? above : d;
        d = below > d ? below : d;
    }
    return d;
}

double normal_cdf(double x, double variance);

} // namespace ncsum
