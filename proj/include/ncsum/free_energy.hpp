#pragma once

#include <cstdint>

namespace ncsum {

struct FreeEnergyModel {
    double p = 0.5;
    double h = 0.0;  // log(p/(1-p)) / 2
    double series_tol = 1e-14;
    int series_cap = 200;
};

FreeEnergyModel make_model(double p, double series_tol = 1e-14, int series_cap = 200);

struct SeriesValue {
    double value = 0.0;
    int terms_used = 0;
};

// Multiscale correction
//   G = 1/2 sum_{n>=1} 2^{-n} log(1 + (2 cosh h / o_+ - 1) (Lambda_-/Lambda_+)^n),
// stopped before the first term below series_tol in magnitude, or at
// series_cap terms.
SeriesValue g_series(const FreeEnergyModel& model, double lambda);

// lim (1/N) log E_p exp(lambda S_N) for S_N = sum_{i<=N} sigma_i sigma_{2i}:
//   log([p(1-p)]^{3/4} |v . e_+| Lambda_+) + G(lambda).
double free_energy(const FreeEnergyModel& model, double lambda);

// Free energy of sum xi_i eta_i for two independent Bernoulli(p) sequences.
double free_energy_independent(double p, double lambda);

// Exact (1/N) log E_p exp(lambda S_N) from the dyadic blocks: one chain of
// M_m + 1 sites per odd m <= N.
double finite_n_log_mgf(const FreeEnergyModel& model, std::int64_t N, double lambda);

// Exact (1/N) log E exp(lambda sum_{i<=N} eta_i eta_{2i}) for i.i.d. {0,1} spins.
double finite_n_log_mgf_01(double p, std::int64_t N, double lambda);

// F''(0) by Richardson-extrapolated central second differences, starting at
// `step`.
double variance(const FreeEnergyModel& model, double step = 2e-2);

} // namespace ncsum
