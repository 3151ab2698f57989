#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ncsum/coloring.hpp"
#include "ncsum/rate_function.hpp"

namespace ncsum::cli {

inline constexpr const char* tool_version = "0.1.0";

struct SeriesSettings {
    double tol = 1e-14;
    int cap = 200;
};

// Defaults overridden by NCSUM_SERIES_TOL, NCSUM_SERIES_CAP, NCSUM_LAMBDA_CAP.
SeriesSettings series_from_env();
RateOptions rate_options_from_env();

// p,lambda,F,G_terms_used,F_ind in (p, lambda) order.
std::string free_energy_csv(const std::vector<double>& ps, const std::vector<double>& lambdas,
                            const SeriesSettings& series, int workers);

// x,I,lambda_star,converged.
std::string rate_csv(double p, const std::vector<double>& xs, const SeriesSettings& series,
                     const RateOptions& opts, int workers);

// p,neg_min_F,neg_min_F_ind,lambda_min,lambda_min_ind.
std::string minima_csv(const std::vector<double>& ps, const SeriesSettings& series, int workers);

// N,ell,K,M,T_1..T_ell ("beyond" for no witness).
std::string stats_csv(const SpinSequence& seq, std::int64_t N, int ell);

// m,anchor,i with anchors as colon-separated exponents.
std::string decompose_csv(std::int64_t N, int k);

struct SimulateParams {
    std::string experiment = "lln";
    std::string source = "";  // default per experiment
    double p = 0.5;
    int k = 2;
    std::int64_t N = 1000;
    std::vector<std::int64_t> horizons;
    std::int64_t samples = 1;
    std::uint64_t seed = 0;
    int workers = 1;
    double t = 0.05;
    double c = 4.0;
    int T_ell = 8;
    double lambda = 0.5;
};

struct SimulateOutput {
    std::string summary;  // experiment,N,statistic,value
    std::string raw;      // experiment,N,replication,value
};

SimulateOutput simulate_csv(const SimulateParams& params);

// Full command line entry point. Returns 0 on success, 2 on parameter
// errors, 1 on runtime errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ncsum::cli
