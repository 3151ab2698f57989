#include "ncsum/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "ncsum/decomposition.hpp"
#include "ncsum/errors.hpp"
#include "ncsum/free_energy.hpp"
#include "ncsum/numdiff.hpp"
#include "ncsum/progression_stats.hpp"

namespace ncsum {

namespace {

void require_samples(std::int64_t samples, std::int64_t minimum, const char* what) {
    if (samples < minimum) {
        throw parameter_error(std::string(what) + " needs at least " + std::to_string(minimum) +
                              " samples");
    }
}

// results[r] = job(r) for r < count, spread over `workers` threads. Each slot
// is written by exactly one thread, so the output is independent of the
// scheduling.
template <class T, class Job>
std::vector<T> replicate(std::int64_t count, int workers, Job&& job) {
    std::vector<T> results(static_cast<std::size_t>(count));
    const int threads = std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(count, 1));
    std::atomic<std::int64_t> next{0};
    const auto drain = [&] {
        for (std::int64_t r = next++; r < count; r = next++) results[static_cast<std::size_t>(r)] = job(r);
    };
    if (threads == 1) {
        drain();
        return results;
    }
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(drain);
    pool.clear();
    return results;
}

SpinSequence replication_sequence(const ExperimentConfig& cfg, std::int64_t n, std::int64_t r) {
    return sample(cfg.source, n, stream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
}

double mean_of(const std::vector<double>& v) {
    long double s = 0;
    for (double x : v) s += x;
    return static_cast<double>(s / static_cast<long double>(v.size()));
}

// E(prod_{j<=k} sigma_{ji}) is exact for product measures.
std::optional<double> exact_progression_mean(const ColoringSource& source, int k) {
    if (source.kind == SourceKind::markov_01) return std::nullopt;
    return std::pow(source.stationary_mean(), k);
}

} // namespace

double normal_cdf(double x, double variance) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

LlnResult lln_experiment(const ExperimentConfig& cfg) {
    require_samples(cfg.samples, 1, "lln_experiment");
    cfg.source.validate();
    LlnResult out;
    out.samples = replicate<double>(cfg.samples, cfg.workers, [&](std::int64_t r) {
        return nonconv_average(replication_sequence(cfg, cfg.k * cfg.N, r), cfg.N, cfg.k);
    });
    out.mean = mean_of(out.samples);
    out.target = std::pow(cfg.source.stationary_mean(), cfg.k);
    out.deviation = std::abs(out.mean - out.target);
    return out;
}

ConcentrationResult concentration_experiment(const ExperimentConfig& cfg, double t,
                                             const std::vector<std::int64_t>& horizons) {
    require_samples(cfg.samples, 1000, "concentration_experiment");
    if (!(t >= 0.0)) throw parameter_error("deviation t must be nonnegative");
    if (horizons.empty()) throw parameter_error("concentration_experiment needs at least one horizon");
    cfg.source.validate();

    ConcentrationResult out;
    out.t = t;
    const auto exact = exact_progression_mean(cfg.source, cfg.k);
    for (std::size_t h = 0; h < horizons.size(); ++h) {
        const std::int64_t N = horizons[h];
        ExperimentConfig local = cfg;
        // Distinct horizons use disjoint replication streams.
        local.seed = stream_seed(cfg.seed, 0x636f6e63ULL + h);
        ConcentrationPoint pt;
        pt.N = N;
        pt.samples = replicate<double>(cfg.samples, cfg.workers, [&](std::int64_t r) {
            return nonconv_average(replication_sequence(local, cfg.k * N, r), N, cfg.k);
        });
        pt.center = exact ? *exact : mean_of(pt.samples);
        const auto exceed = std::count_if(pt.samples.begin(), pt.samples.end(),
                                          [&](double a) { return std::abs(a - pt.center) > t; });
        const double n = static_cast<double>(cfg.samples);
        if (exceed == 0) {
            pt.tail = 0.0;
            pt.tail_is_bound = true;
            pt.fitted_C = t > 0 ? -std::log(3.0 / n) / (static_cast<double>(N) * t * t) : 0.0;
        } else {
            pt.tail = static_cast<double>(exceed) / n;
            pt.fitted_C = t > 0 ? -std::log(pt.tail) / (static_cast<double>(N) * t * t) : 0.0;
        }
        out.points.push_back(std::move(pt));
    }
    out.decays = true;
    for (std::size_t i = 1; i < out.points.size(); ++i) {
        if (!(out.points[i].tail < out.points[i - 1].tail)) out.decays = false;
    }
    return out;
}

CltResult clt_experiment(const ExperimentConfig& cfg) {
    if (cfg.k != 2) throw parameter_error("clt_experiment is defined for k = 2");
    if (cfg.source.kind != SourceKind::iid_pm)
        throw parameter_error("clt_experiment needs an i.i.d. +-1 source");
    require_samples(cfg.samples, 10000, "clt_experiment");
    cfg.source.validate();

    const FreeEnergyModel model = make_model(cfg.source.p);
    CltResult out;
    out.mean_per_site = richardson_first_derivative(
        [&](double l) { return finite_n_log_mgf(model, cfg.N, l); }, 0.0, 1e-3);
    out.sigma2 = variance(model);

    const double n = static_cast<double>(cfg.N);
    const double center = n * out.mean_per_site;
    const double scale = std::sqrt(n);
    out.standardized = replicate<double>(cfg.samples, cfg.workers, [&](std::int64_t r) {
        const auto s = nonconv_sum(replication_sequence(cfg, 2 * cfg.N, r), cfg.N, 2);
        return (static_cast<double>(s) - center) / scale;
    });
    std::sort(out.standardized.begin(), out.standardized.end());
    out.ks_distance = ks_distance(out.standardized, [&](double z) { return normal_cdf(z, out.sigma2); });
    return out;
}

LogmaxResult logmax_experiment(const ExperimentConfig& cfg, const LogmaxOptions& opts) {
    if (cfg.source.alphabet() != Alphabet::zero_one)
        throw parameter_error("logmax_experiment needs a {0,1} source");
    if (!(opts.c > 0.0)) throw parameter_error("c must be positive");
    if (opts.T_ell < 1) throw parameter_error("T ell must be positive");
    require_samples(cfg.samples, 2, "logmax_experiment");
    cfg.source.validate();

    LogmaxResult out;
    out.c = opts.c;
    for (std::size_t h = 0; h < opts.horizons.size(); ++h) {
        const std::int64_t N = opts.horizons[h];
        if (N < 2) throw parameter_error("logmax horizons must be at least 2");
        ExperimentConfig local = cfg;
        local.seed = stream_seed(cfg.seed, 0x6c6f676dULL + h);

        LogmaxPoint pt;
        pt.N = N;
        const double log_n = std::log(static_cast<double>(N));
        pt.ell = static_cast<int>(std::ceil(opts.c * log_n));
        struct Pair {
            std::int64_t K = 0;
            std::int64_t M = 0;
        };
        const auto runs = replicate<Pair>(cfg.samples, cfg.workers, [&](std::int64_t r) {
            const auto seq = replication_sequence(local, N, r);
            return Pair{count_K(seq, N, pt.ell), max_progression(seq, N)};
        });
        long double sk = 0, sm = 0;
        for (const auto& run : runs) {
            pt.K_samples.push_back(run.K);
            pt.M_samples.push_back(run.M);
            sk += run.K;
            sm += run.M;
        }
        const auto n = static_cast<long double>(runs.size());
        pt.mean_K = static_cast<double>(sk / n);
        pt.mean_M = static_cast<double>(sm / n);
        pt.mean_M_over_log_N = pt.mean_M / log_n;
        long double ss = 0;
        for (const auto& run : runs) ss += (run.M - sm / n) * (run.M - sm / n);
        pt.var_M = static_cast<double>(ss / (n - 1));
        out.points.push_back(std::move(pt));
    }

    out.T_ell = opts.T_ell;
    ExperimentConfig local = cfg;
    local.seed = stream_seed(cfg.seed, 0x54656c6cULL);
    const auto firsts = replicate<std::optional<std::int64_t>>(cfg.samples, cfg.workers, [&](std::int64_t r) {
        return first_occurrence(replication_sequence(local, opts.T_horizon, r), opts.T_ell);
    });
    for (const auto& f : firsts) {
        if (f) out.T_samples.push_back(*f);
        else ++out.T_censored;
    }
    std::sort(out.T_samples.begin(), out.T_samples.end());
    if (!out.T_samples.empty()) {
        long double s = 0;
        for (auto v : out.T_samples) s += v;
        out.T_mean = static_cast<double>(s / static_cast<long double>(out.T_samples.size()));
        std::vector<double> scaled;
        scaled.reserve(out.T_samples.size());
        for (auto v : out.T_samples) scaled.push_back(static_cast<double>(v) / out.T_mean);
        out.T_ks_exponential = ks_distance(scaled, [](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); });
    }
    return out;
}

MgfResult mgf_experiment(const ExperimentConfig& cfg, double lambda, int bootstrap_rounds) {
    if (cfg.source.kind != SourceKind::iid_pm) throw parameter_error("mgf_experiment needs a +-1 source");
    require_samples(cfg.samples, 2, "mgf_experiment");
    if (bootstrap_rounds < 2) throw parameter_error("bootstrap needs at least two rounds");
    cfg.source.validate();

    const auto sums = replicate<std::int64_t>(cfg.samples, cfg.workers, [&](std::int64_t r) {
        return nonconv_sum(replication_sequence(cfg, 2 * cfg.N, r), cfg.N, 2);
    });
    // exp(lambda S) relative to the largest exponent keeps the average finite.
    const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
    const double shift = lambda >= 0 ? lambda * static_cast<double>(*hi) : lambda * static_cast<double>(*lo);
    std::vector<double> weights(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) weights[i] = std::exp(lambda * static_cast<double>(sums[i]) - shift);

    const double n_sites = static_cast<double>(cfg.N);
    const auto estimate = [&](const auto& pick) {
        long double s = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) s += weights[pick(i)];
        return (std::log(static_cast<double>(s / static_cast<long double>(weights.size()))) + shift) / n_sites;
    };

    MgfResult out;
    out.lambda = lambda;
    out.estimate = estimate([](std::size_t i) { return i; });

    SplitMix64 rng(stream_seed(cfg.seed, 0x626f6f74ULL));
    const auto n = static_cast<std::uint64_t>(weights.size());
    std::vector<double> boots;
    boots.reserve(static_cast<std::size_t>(bootstrap_rounds));
    std::vector<std::size_t> picks(weights.size());
    for (int b = 0; b < bootstrap_rounds; ++b) {
        for (auto& p : picks) p = static_cast<std::size_t>(rng.next() % n);
        boots.push_back(estimate([&](std::size_t i) { return picks[i]; }));
    }
    const double m = mean_of(boots);
    long double ss = 0;
    for (double v : boots) ss += (v - m) * (v - m);
    out.standard_error = static_cast<double>(std::sqrt(ss / (bootstrap_rounds - 1)));
    return out;
}

double block_correlation_experiment(const ExperimentConfig& cfg, std::int64_t m_a, std::int64_t m_b) {
    require_samples(cfg.samples, 2, "block_correlation_experiment");
    cfg.source.validate();
    const auto decomposition = decompose(cfg.N, cfg.k);
    const auto find = [&](std::int64_t m) -> const Block& {
        for (const auto& b : decomposition.blocks) {
            if (b.m == m) return b;
        }
        throw parameter_error("no block with base " + std::to_string(m));
    };
    const Block& a = find(m_a);
    const Block& b = find(m_b);

    struct Pair {
        double a = 0, b = 0;
    };
    const auto values = replicate<Pair>(cfg.samples, cfg.workers, [&](std::int64_t r) {
        const auto seq = replication_sequence(cfg, cfg.k * cfg.N, r);
        return Pair{static_cast<double>(block_hamiltonian(seq, a, decomposition.shape)),
                    static_cast<double>(block_hamiltonian(seq, b, decomposition.shape))};
    });
    long double sa = 0, sb = 0;
    for (const auto& v : values) {
        sa += v.a;
        sb += v.b;
    }
    const auto n = static_cast<long double>(values.size());
    const long double ma = sa / n, mb = sb / n;
    long double caa = 0, cbb = 0, cab = 0;
    for (const auto& v : values) {
        caa += (v.a - ma) * (v.a - ma);
        cbb += (v.b - mb) * (v.b - mb);
        cab += (v.a - ma) * (v.b - mb);
    }
    if (caa == 0 || cbb == 0) return 0.0;
    return static_cast<double>(cab / std::sqrt(caa * cbb));
}

} // namespace ncsum
