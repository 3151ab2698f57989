#include "ncsum/free_energy.hpp"

#include <cmath>
#include <string>

#include "ncsum/decomposition.hpp"
#include "ncsum/errors.hpp"
#include "ncsum/ising1d.hpp"
#include "ncsum/numdiff.hpp"

namespace ncsum {

namespace {

constexpr double lambda_limit = 700.0;

void require_lambda(double lambda) {
    if (!std::isfinite(lambda) || std::abs(lambda) > lambda_limit)
        throw parameter_error("lambda must be finite with |lambda| <= 700");
}

template <class BlockLog>
double blockwise_log_mgf(std::int64_t N, double lambda, BlockLog&& block_log) {
    if (N < 1) throw parameter_error("N must be positive");
    require_lambda(lambda);
    if (lambda == 0.0) return 0.0;
    const auto counts = block_size_histogram_k2(N);
    long double total = 0;
    for (std::size_t M = 1; M < counts.size(); ++M) {
        if (counts[M] == 0) continue;
        total += static_cast<long double>(counts[M]) * block_log(static_cast<int>(M) + 1);
    }
    return static_cast<double>(total / N);
}

} // namespace

FreeEnergyModel make_model(double p, double series_tol, int series_cap) {
    if (!(series_tol >= 0.0)) throw parameter_error("series tolerance must be nonnegative");
    if (series_cap < 1) throw parameter_error("series cap must be positive");
    FreeEnergyModel m;
    m.p = p;
    m.h = field_from_probability(p);
    m.series_tol = series_tol;
    m.series_cap = series_cap;
    return m;
}

SeriesValue g_series(const FreeEnergyModel& model, double lambda) {
    require_lambda(lambda);
    const SpectralData s = spectral(lambda, model.h);
    SeriesValue out;
    // 2 cosh h / o_+ - 1 = o_- / o_+
    const double c = s.overlap_ratio;
    const double r = s.ratio;
    if (c == 0.0 || r == 0.0) return out;

    long double sum = 0;
    double rn = 1;
    for (int n = 1; n <= model.series_cap; ++n) {
        rn *= r;
        const double term = std::ldexp(std::log1p(c * rn), -(n + 1));
        if (std::abs(term) < model.series_tol) break;
        sum += term;
        ++out.terms_used;
    }
    out.value = static_cast<double>(sum);
    return out;
}

double free_energy(const FreeEnergyModel& model, double lambda) {
    require_lambda(lambda);
    const SpectralData s = spectral(lambda, model.h);
    const double log_pq = std::log(model.p) + std::log1p(-model.p);
    // log |v . e_+| = log(o_+) / 2
    return 0.75 * log_pq + s.log_Lambda_plus + 0.5 * s.log_overlap_plus + g_series(model, lambda).value;
}

double free_energy_independent(double p, double lambda) {
    if (!(p > 0.0 && p < 1.0)) throw parameter_error("p must lie in (0,1), got " + std::to_string(p));
    require_lambda(lambda);
    const double same = p * p + (1 - p) * (1 - p);
    const double differ = 2 * p * (1 - p);
    if (lambda >= 0) return lambda + std::log(same + differ * std::exp(-2 * lambda));
    return -lambda + std::log(same * std::exp(2 * lambda) + differ);
}

double finite_n_log_mgf(const FreeEnergyModel& model, std::int64_t N, double lambda) {
    return blockwise_log_mgf(N, lambda, [&](int sites) { return log_block_mgf(lambda, model.p, sites); });
}

double finite_n_log_mgf_01(double p, std::int64_t N, double lambda) {
    if (!(p > 0.0 && p < 1.0)) throw parameter_error("p must lie in (0,1), got " + std::to_string(p));
    return blockwise_log_mgf(N, lambda, [&](int sites) { return log_block_mgf_01(lambda, p, sites); });
}

double variance(const FreeEnergyModel& model, double step) {
    if (!(step > 0.0)) throw parameter_error("difference step must be positive");
    return richardson_second_derivative([&](double l) { return free_energy(model, l); }, 0.0, step);
}

} // namespace ncsum
