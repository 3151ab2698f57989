#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncsum/cli.hpp"
#include "ncsum/csv.hpp"
#include "ncsum/decomposition.hpp"
#include "ncsum/errors.hpp"
#include "ncsum/free_energy.hpp"
#include "ncsum/montecarlo.hpp"
#include "ncsum/progression_stats.hpp"
#include "ncsum/rate_function.hpp"

namespace ncsum::cli {

namespace {

// Rows are produced in parallel and concatenated in index order.
template <class RowFn>
std::string parallel_rows(std::size_t count, int workers, RowFn&& row) {
    std::vector<std::string> rows(count);
    std::atomic<std::size_t> next{0};
    const auto drain = [&] {
        for (std::size_t i = next++; i < count; i = next++) rows[i] = row(i);
    };
    const auto threads = static_cast<std::size_t>(std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1, std::max<std::size_t>(count, 1)));
    if (threads == 1) {
        drain();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(drain);
    }
    std::string out;
    for (auto& r : rows) out += r;
    return out;
}

double env_double(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    const double x = std::strtod(v, &end);
    if (*end != '\0') throw parameter_error(std::string(name) + " is not a number");
    return x;
}

std::string fmt_int(std::int64_t v) { return std::to_string(v); }

std::string stat_row(const std::string& experiment, std::int64_t N, const std::string& name, double value) {
    return csv_row({experiment, fmt_int(N), name, format_double(value)});
}

ColoringSource make_source(const std::string& kind, double p) {
    if (kind == "iid_pm") return ColoringSource::iid_pm(p);
    if (kind == "iid_01") return ColoringSource::iid_01(p);
    throw parameter_error("unknown source '" + kind + "' (expected iid_pm or iid_01)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

} // namespace

SeriesSettings series_from_env() {
    SeriesSettings s;
    s.tol = env_double("NCSUM_SERIES_TOL", s.tol);
    s.cap = static_cast<int>(env_double("NCSUM_SERIES_CAP", s.cap));
    return s;
}

RateOptions rate_options_from_env() {
    RateOptions o;
    o.lambda_cap = env_double("NCSUM_LAMBDA_CAP", o.lambda_cap);
    return o;
}

std::string free_energy_csv(const std::vector<double>& ps, const std::vector<double>& lambdas,
                            const SeriesSettings& series, int workers) {
    if (ps.empty() || lambdas.empty()) throw parameter_error("free-energy grids must be nonempty");
    std::vector<FreeEnergyModel> models;
    for (double p : ps) models.push_back(make_model(p, series.tol, series.cap));
    std::string out = csv_row({"p", "lambda", "F", "G_terms_used", "F_ind"});
    out += parallel_rows(ps.size() * lambdas.size(), workers, [&](std::size_t idx) {
        const auto& model = models[idx / lambdas.size()];
        const double lambda = lambdas[idx % lambdas.size()];
        return csv_row({format_double(model.p), format_double(lambda), format_double(free_energy(model, lambda)),
                        fmt_int(g_series(model, lambda).terms_used),
                        format_double(free_energy_independent(model.p, lambda))});
    });
    return out;
}

std::string rate_csv(double p, const std::vector<double>& xs, const SeriesSettings& series,
                     const RateOptions& opts, int workers) {
    if (xs.empty()) throw parameter_error("rate grid must be nonempty");
    const auto model = make_model(p, series.tol, series.cap);
    std::string out = csv_row({"x", "I", "lambda_star", "converged"});
    out += parallel_rows(xs.size(), workers, [&](std::size_t i) {
        const auto r = rate(model, xs[i], opts);
        return csv_row({format_double(r.x), format_double(r.I), format_double(r.lambda_star),
                        r.converged ? "1" : "0"});
    });
    return out;
}

std::string minima_csv(const std::vector<double>& ps, const SeriesSettings& series, int workers) {
    if (ps.empty()) throw parameter_error("minima grid must be nonempty");
    std::string out = csv_row({"p", "neg_min_F", "neg_min_F_ind", "lambda_min", "lambda_min_ind"});
    out += parallel_rows(ps.size(), workers, [&](std::size_t i) {
        const auto model = make_model(ps[i], series.tol, series.cap);
        const auto m = min_free_energy(model);
        const auto mi = min_free_energy_independent(ps[i]);
        return csv_row({format_double(ps[i]), format_double(-m.F_min), format_double(-mi.F_min),
                        format_double(m.lambda_min), format_double(mi.lambda_min)});
    });
    return out;
}

std::string stats_csv(const SpinSequence& seq, std::int64_t N, int ell) {
    const auto report = progression_report(seq, N, ell);
    std::vector<std::string> header{"N", "ell", "K", "M"};
    std::vector<std::string> row{fmt_int(report.N), std::to_string(report.ell), fmt_int(report.K), fmt_int(report.M)};
    for (const auto& [l, t] : report.T_values) {
        header.push_back("T_" + std::to_string(l));
        row.push_back(t ? fmt_int(*t) : "beyond");
    }
    return csv_row(header) + csv_row(row);
}

std::string decompose_csv(std::int64_t N, int k) {
    const auto d = decompose(N, k);
    std::string out = csv_row({"m", "anchor", "i"});
    for (const auto& b : d.blocks) {
        for (std::size_t t = 0; t < b.terms(); ++t) {
            std::string anchor;
            for (auto e : b.anchor(t)) {
                if (!anchor.empty()) anchor += ':';
                anchor += std::to_string(e);
            }
            out += csv_row({fmt_int(b.m), anchor, fmt_int(b.term_index[t])});
        }
    }
    return out;
}

SimulateOutput simulate_csv(const SimulateParams& prm) {
    ExperimentConfig cfg;
    cfg.N = prm.N;
    cfg.k = prm.k;
    cfg.samples = prm.samples;
    cfg.seed = prm.seed;
    cfg.workers = prm.workers;
    if (prm.N < 1) throw parameter_error("N must be positive");

    SimulateOutput out;
    out.summary = csv_row({"experiment", "N", "statistic", "value"});
    out.raw = csv_row({"experiment", "N", "replication", "value"});
    const auto& e = prm.experiment;
    const auto raw_values = [&](std::int64_t N, const auto& values) {
        for (std::size_t r = 0; r < values.size(); ++r) {
            out.raw += csv_row({e, fmt_int(N), fmt_int(static_cast<std::int64_t>(r)),
                                format_double(static_cast<double>(values[r]))});
        }
    };

    if (e == "lln") {
        cfg.source = make_source(prm.source.empty() ? "iid_01" : prm.source, prm.p);
        const auto r = lln_experiment(cfg);
        out.summary += stat_row(e, cfg.N, "mean", r.mean);
        out.summary += stat_row(e, cfg.N, "target", r.target);
        out.summary += stat_row(e, cfg.N, "deviation", r.deviation);
        raw_values(cfg.N, r.samples);
    } else if (e == "concentration") {
        cfg.source = make_source(prm.source.empty() ? "iid_01" : prm.source, prm.p);
        const auto horizons = prm.horizons.empty() ? std::vector<std::int64_t>{cfg.N} : prm.horizons;
        const auto r = concentration_experiment(cfg, prm.t, horizons);
        for (const auto& pt : r.points) {
            out.summary += stat_row(e, pt.N, "center", pt.center);
            out.summary += stat_row(e, pt.N, "tail", pt.tail);
            out.summary += stat_row(e, pt.N, "tail_is_bound", pt.tail_is_bound ? 1.0 : 0.0);
            out.summary += stat_row(e, pt.N, "fitted_C", pt.fitted_C);
            raw_values(pt.N, pt.samples);
        }
        out.summary += stat_row(e, 0, "decays", r.decays ? 1.0 : 0.0);
    } else if (e == "clt") {
        cfg.source = make_source(prm.source.empty() ? "iid_pm" : prm.source, prm.p);
        const auto r = clt_experiment(cfg);
        out.summary += stat_row(e, cfg.N, "mean_per_site", r.mean_per_site);
        out.summary += stat_row(e, cfg.N, "sigma2", r.sigma2);
        out.summary += stat_row(e, cfg.N, "ks_distance", r.ks_distance);
        raw_values(cfg.N, r.standardized);
    } else if (e == "logmax") {
        cfg.source = make_source(prm.source.empty() ? "iid_01" : prm.source, prm.p);
        LogmaxOptions opts;
        opts.c = prm.c;
        opts.T_ell = prm.T_ell;
        if (!prm.horizons.empty()) opts.horizons = prm.horizons;
        const auto r = logmax_experiment(cfg, opts);
        for (const auto& pt : r.points) {
            out.summary += stat_row(e, pt.N, "ell", pt.ell);
            out.summary += stat_row(e, pt.N, "mean_K", pt.mean_K);
            out.summary += stat_row(e, pt.N, "mean_M", pt.mean_M);
            out.summary += stat_row(e, pt.N, "mean_M_over_log_N", pt.mean_M_over_log_N);
            out.summary += stat_row(e, pt.N, "var_M", pt.var_M);
            raw_values(pt.N, pt.M_samples);
        }
        out.summary += stat_row(e, 0, "T_ell", r.T_ell);
        out.summary += stat_row(e, 0, "T_mean", r.T_mean);
        out.summary += stat_row(e, 0, "T_censored", static_cast<double>(r.T_censored));
        out.summary += stat_row(e, 0, "T_ks_exponential", r.T_ks_exponential);
    } else if (e == "mgf") {
        cfg.source = make_source(prm.source.empty() ? "iid_pm" : prm.source, prm.p);
        const auto r = mgf_experiment(cfg, prm.lambda);
        out.summary += stat_row(e, cfg.N, "lambda", r.lambda);
        out.summary += stat_row(e, cfg.N, "estimate", r.estimate);
        out.summary += stat_row(e, cfg.N, "standard_error", r.standard_error);
        out.summary += stat_row(e, cfg.N, "exact", finite_n_log_mgf(make_model(prm.p), cfg.N, prm.lambda));
    } else {
        throw parameter_error("unknown experiment '" + e + "'");
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Statistics of nonconventional sums sum_i sigma_i sigma_2i ... sigma_ki over random colourings."};
    app.require_subcommand(0, 1);
    app.fallthrough();
    app.footer(
        "Environment overrides:\n"
        "  NCSUM_SERIES_TOL   truncation tolerance of the multiscale series (default 1e-14)\n"
        "  NCSUM_SERIES_CAP   maximal number of series terms (default 200)\n"
        "  NCSUM_LAMBDA_CAP   lambda search cap of the rate function (default 50)\n"
        "Exit status: 0 success, 1 runtime error, 2 parameter error.");

    std::uint64_t seed = 0;
    int workers = 1;
    std::string output, manifest, replay;
    app.add_option("--seed", seed, "Base seed of every random stream");
    app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--output", output, "Write CSV here instead of stdout");
    app.add_option("--manifest", manifest, "Run manifest path (default: <output>.manifest.json)");
    app.add_option("--replay", replay, "Re-run the command recorded in a manifest");

    auto* fe = app.add_subcommand("free-energy", "Free energy F_p, its series length and F_ind on a (p, lambda) grid");
    std::string fe_p = "0.1,0.2,0.3,0.4,0.5", fe_lambda = "-5:5:0.05";
    int fe_terms = 0;
    fe->add_option("--p", fe_p, "p values (list or start:stop:step)")->capture_default_str();
    fe->add_option("--lambda", fe_lambda, "lambda grid")->capture_default_str();
    fe->add_option("--terms", fe_terms, "Sum exactly this many series terms instead of adaptive truncation");

    auto* rt = app.add_subcommand("rate", "Rate function I_p on an x grid");
    double rt_p = 0.5;
    std::string rt_x = "-1:1:0.02";
    rt->add_option("--p", rt_p, "p")->capture_default_str();
    rt->add_option("--x", rt_x, "x grid")->capture_default_str();

    auto* mn = app.add_subcommand("minima", "-min F_p and -min F_ind as functions of p");
    std::string mn_p = "0.05:0.5:0.05";
    mn->add_option("--p", mn_p, "p grid")->capture_default_str();

    auto* st = app.add_subcommand("stats", "K(N,ell), M(N) and T(1..ell) of one colouring");
    std::string st_input, st_source = "iid_01";
    double st_p = 0.5;
    std::int64_t st_n = 1000, st_N = 0;
    int st_ell = 3;
    st->add_option("--input", st_input, "Sequence file ('01 1 0 1 ...'); otherwise one is sampled");
    st->add_option("--source", st_source, "Source kind for sampling (iid_01 or iid_pm)")->capture_default_str();
    st->add_option("--p", st_p, "Source parameter")->capture_default_str();
    st->add_option("--n", st_n, "Sampled sequence length")->capture_default_str();
    st->add_option("--N", st_N, "Horizon (default: sequence length)");
    st->add_option("--ell", st_ell, "Progression size")->capture_default_str();

    auto* dc = app.add_subcommand("decompose", "Block decomposition of the term indices 1..N");
    std::int64_t dc_N = 7;
    int dc_k = 2;
    dc->add_option("--N", dc_N, "Horizon")->capture_default_str();
    dc->add_option("--k", dc_k, "Progression size")->capture_default_str();

    auto* sm = app.add_subcommand("simulate", "Seeded Monte Carlo experiments");
    SimulateParams prm;
    std::string sm_raw;
    sm->add_option("--experiment", prm.experiment, "lln, concentration, clt, logmax or mgf")
        ->check(CLI::IsMember({"lln", "concentration", "clt", "logmax", "mgf"}))
        ->capture_default_str();
    sm->add_option("--source", prm.source, "iid_01 or iid_pm (default depends on experiment)");
    sm->add_option("--p", prm.p, "Source parameter")->capture_default_str();
    sm->add_option("--k", prm.k, "Progression size")->capture_default_str();
    sm->add_option("--N", prm.N, "Horizon")->capture_default_str();
    sm->add_option("--horizons", prm.horizons, "Horizon ladder (concentration, logmax)")->delimiter(',');
    sm->add_option("--samples", prm.samples, "Replications")->capture_default_str();
    sm->add_option("--t", prm.t, "Deviation threshold (concentration)")->capture_default_str();
    sm->add_option("--c", prm.c, "Progression length factor ell = ceil(c log N) (logmax)")->capture_default_str();
    sm->add_option("--T-ell", prm.T_ell, "Progression size for T(ell) (logmax)")->capture_default_str();
    sm->add_option("--lambda", prm.lambda, "Exponent (mgf)")->capture_default_str();
    sm->add_option("--emit-raw", sm_raw, "Write per-replication values to this CSV");

    std::vector<const char*> argv{"ncsum"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ncsum: " << e.what() << "\n";
        return 2;
    }

    try {
        if (!replay.empty()) {
            const auto j = nlohmann::json::parse(read_file(replay));
            std::vector<std::string> recorded = j.at("argv").get<std::vector<std::string>>();
            for (const auto& a : recorded) {
                if (a == "--replay") throw parameter_error("manifest argv must not contain --replay");
            }
            return run(recorded, out, err);
        }
        if (app.get_subcommands().empty()) {
            err << app.help();
            return 2;
        }
        CLI::App* sub = app.get_subcommands().front();

        std::string csv;
        std::string raw;
        const SeriesSettings series = series_from_env();
        if (sub == fe) {
            SeriesSettings s = series;
            if (fe_terms > 0) {
                s.tol = 0.0;
                s.cap = fe_terms;
            }
            csv = free_energy_csv(parse_grid(fe_p), parse_grid(fe_lambda), s, workers);
        } else if (sub == rt) {
            csv = rate_csv(rt_p, parse_grid(rt_x), series, rate_options_from_env(), workers);
        } else if (sub == mn) {
            csv = minima_csv(parse_grid(mn_p), series, workers);
        } else if (sub == st) {
            SpinSequence seq = st_input.empty() ? sample(make_source(st_source, st_p), st_n, seed)
                                                : from_text(read_file(st_input));
            if (seq.alphabet() == Alphabet::plus_minus) seq = convert(seq, Alphabet::zero_one);
            const std::int64_t N = st_N > 0 ? st_N : static_cast<std::int64_t>(seq.size());
            csv = stats_csv(seq, N, st_ell);
        } else if (sub == dc) {
            csv = decompose_csv(dc_N, dc_k);
        } else if (sub == sm) {
            prm.seed = seed;
            prm.workers = workers;
            auto result = simulate_csv(prm);
            csv = std::move(result.summary);
            raw = std::move(result.raw);
        }

        if (output.empty()) out << csv;
        else write_file(output, csv);
        if (!sm_raw.empty()) write_file(sm_raw, raw);

        const std::string manifest_path = !manifest.empty() ? manifest : (output.empty() ? "" : output + ".manifest.json");
        if (!manifest_path.empty()) {
            nlohmann::ordered_json j;
            j["tool"] = "ncsum";
            j["version"] = tool_version;
            j["subcommand"] = sub->get_name();
            nlohmann::ordered_json params = nlohmann::ordered_json::object();
            for (const CLI::Option* opt : sub->get_options()) {
                if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
                const auto& res = opt->results();
                std::string value;
                if (res.empty()) value = opt->get_default_str();
                for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
                params[opt->get_name()] = value;
            }
            params["--workers"] = std::to_string(workers);
            j["parameters"] = params;
            j["seed"] = seed;
            j["output"] = output;
            j["argv"] = args;
            write_file(manifest_path, j.dump(2) + "\n");
        }
        return 0;
    } catch (const parameter_error& e) {
        err << "ncsum: parameter error: " << e.what() << "\n";
        return 2;
    } catch (const sequence_length_error& e) {
        err << "ncsum: parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "ncsum: error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace ncsum::cli
