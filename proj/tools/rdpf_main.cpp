// Command-line driver: scalar and multivariate rate-distortion-perception
// computations, multiplier sweeps, the perfect-realism and water-filling
// baselines, and record verification.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdpf/divergence.hpp"
#include "rdpf/errors.hpp"
#include "rdpf/gaussian.hpp"
#include "rdpf/multivar.hpp"
#include "rdpf/oracle.hpp"
#include "rdpf/report.hpp"
#include "rdpf/scalar_rdpf.hpp"

namespace {

using rdpf::OutputRecord;
using rdpf::PerceptionMetric;
using rdpf::Vec;

constexpr double kLn2 = 0.6931471805599453;

struct RunConfig {
    std::string command;
    std::string metric_name;
    double var = 1.0;
    double mean = 0.0;
    Vec eigs;
    std::string source_path;
    double dist = 0.0;
    double perc = 0.0;
    std::vector<double> s1_list;
    std::vector<double> s2_list;
    double eps = 1e-10;
    long max_iters = 200000;
    bool s2_floor = true;
    bool emit_traces = false;
    bool bits_console = false;
    std::string output;
    std::string format = "json";
    int threads = 0;
    std::string record_path;
    long mc_samples = 0;
    std::uint64_t seed = 1234;
};

PerceptionMetric require_metric(const std::string& name) {
    auto m = rdpf::metric_from_name(name);
    if (!m)
        throw std::invalid_argument("unknown metric '" + name + "' (expected kl, rkl, gjs, h2 or w2)");
    return *m;
}

rdpf::GaussianSource load_source(const RunConfig& cfg) {
    if (!cfg.source_path.empty()) {
        std::ifstream in(cfg.source_path);
        if (!in) throw std::invalid_argument("cannot open source descriptor " + cfg.source_path);
        std::stringstream buf;
        buf << in.rdbuf();
        return rdpf::GaussianSource::from_json_text(buf.str());
    }
    if (cfg.eigs.empty()) throw std::invalid_argument("give a source via --eigs or --source");
    return rdpf::GaussianSource::from_eigenvalues(cfg.eigs);
}

nlohmann::json source_inputs(const rdpf::GaussianSource& source) {
    nlohmann::json j;
    bool diagonal_zero_mean = true;
    for (double m : source.mean())
        if (m != 0.0) diagonal_zero_mean = false;
    const rdpf::Matrix& cov = source.covariance();
    for (std::size_t i = 0; i < cov.rows() && diagonal_zero_mean; ++i)
        for (std::size_t k = 0; k < cov.cols(); ++k)
            if (i != k && cov(i, k) != 0.0) { diagonal_zero_mean = false; break; }
    if (diagonal_zero_mean) {
        Vec d(cov.rows());
        for (std::size_t i = 0; i < cov.rows(); ++i) d[i] = cov(i, i);
        j["eigenvalues"] = d;
    } else {
        j["mean"] = source.mean();
        std::vector<Vec> rows(cov.rows(), Vec(cov.cols()));
        for (std::size_t i = 0; i < cov.rows(); ++i)
            for (std::size_t k = 0; k < cov.cols(); ++k) rows[i][k] = cov(i, k);
        j["covariance"] = rows;
    }
    return j;
}

double effective_s2(const RunConfig& cfg, PerceptionMetric metric, double s2) {
    double floor = rdpf::default_s2_floor(metric);
    if (cfg.s2_floor && s2 < floor) {
        std::cerr << "note: s2 raised to " << floor << " for " << rdpf::metric_name(metric)
                  << " (disable with --no-s2-floor)\n";
        return floor;
    }
    return s2;
}

OutputRecord run_scalar(const RunConfig& cfg) {
    PerceptionMetric metric = require_metric(cfg.metric_name);
    double perc = cfg.perc;
    if (metric == PerceptionMetric::hellinger_sq && perc >= 2.0 - 1e-9 && perc < 2.0) {
        std::cerr << "warning: squared Hellinger level clamped to 2-1e-9\n";
        perc = 2.0 - 1e-9;
    }
    rdpf::ScalarRdpSolution sol = rdpf::scalar_rdpf(metric, cfg.var, cfg.dist, perc);
    OutputRecord r;
    r.command = "scalar";
    r.metric = rdpf::metric_name(metric);
    r.dist = cfg.dist;
    r.perc = perc;
    r.rate_nats = sol.rate;
    r.rate_bits = sol.rate / kLn2;
    r.region = rdpf::region_name(sol.region);
    r.dims = {{cfg.dist, perc, sol.realization.gain, sol.realization.noise_var}};
    r.inputs = {{"var", cfg.var}, {"mean", cfg.mean}, {"dist", cfg.dist}, {"perc", perc}};
    return r;
}

OutputRecord run_multivar_point(const rdpf::GaussianSource& source, PerceptionMetric metric,
                                double s1, double s2, double eps, long max_iters,
                                bool emit_trace) {
    rdpf::MultiRdpSolution sol = rdpf::alternating_minimization(
        source, metric, {s1, s2}, eps, static_cast<int>(max_iters));
    OutputRecord r;
    r.command = "multivar";
    r.metric = rdpf::metric_name(metric);
    r.s1 = s1;
    r.s2 = s2;
    r.dist = sol.total_dist;
    r.perc = sol.total_perc;
    r.rate_nats = sol.rate;
    r.rate_bits = sol.rate / kLn2;
    r.region = sol.trace.converged ? "converged" : "not_converged";
    r.iterations = sol.trace.iterations_used;
    r.gap_final = sol.trace.gaps.empty() ? 0.0 : sol.trace.gaps.back();
    for (std::size_t i = 0; i < source.dim(); ++i)
        r.dims.push_back({sol.allocation.dist[i], sol.allocation.perc[i],
                          sol.realization.gains[i], sol.realization.noise_vars[i]});
    r.inputs = source_inputs(source);
    r.inputs["s1"] = s1;
    r.inputs["s2"] = s2;
    r.inputs["eps"] = eps;
    r.inputs["max_iters"] = max_iters;
    if (emit_trace) r.trace_gaps = sol.trace.gaps;
    return r;
}

std::vector<OutputRecord> run_sweep(const RunConfig& cfg) {
    PerceptionMetric metric = require_metric(cfg.metric_name);
    rdpf::GaussianSource source = load_source(cfg);
    if (cfg.s1_list.empty() || cfg.s2_list.empty())
        throw std::invalid_argument("sweep needs nonempty --s1 and --s2 grids");

    std::vector<std::pair<double, double>> points;
    std::vector<double> s1_sorted = cfg.s1_list, s2_sorted = cfg.s2_list;
    std::sort(s1_sorted.begin(), s1_sorted.end());
    std::sort(s2_sorted.begin(), s2_sorted.end());
    for (double s1 : s1_sorted)
        for (double s2 : s2_sorted) points.emplace_back(s1, s2);

    std::vector<OutputRecord> records(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            auto [s1, s2] = points[i];
            try {
                records[i] = run_multivar_point(source, metric, s1, effective_s2(cfg, metric, s2),
                                                cfg.eps, cfg.max_iters, cfg.emit_traces);
                records[i].command = "sweep";
            } catch (const std::exception& e) {
                OutputRecord r;
                r.command = "sweep";
                r.metric = rdpf::metric_name(metric);
                r.s1 = s1;
                r.s2 = s2;
                r.status = std::string("error: ") + e.what();
                r.inputs = source_inputs(source);
                records[i] = r;
            }
        }
    };
    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, points.size());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return records;
}

OutputRecord run_perfect_realism(const RunConfig& cfg) {
    rdpf::GaussianSource source = load_source(cfg);
    if (cfg.s1_list.size() != 1) throw std::invalid_argument("perfect-realism needs one --s1 value");
    double s1 = cfg.s1_list[0];
    Vec alloc = rdpf::perfect_realism_allocation(source.eigvals(), s1);
    OutputRecord r;
    r.command = "perfect-realism";
    r.s1 = s1;
    r.perc = 0.0;
    double total = 0.0, rate = 0.0;
    for (std::size_t i = 0; i < alloc.size(); ++i) {
        rdpf::ScalarRdpSolution s =
            rdpf::scalar_rdpf(PerceptionMetric::wasserstein2_sq, source.eigvals()[i], alloc[i], 0.0);
        total += alloc[i];
        rate += s.rate;
        r.dims.push_back({alloc[i], 0.0, s.realization.gain, s.realization.noise_var});
    }
    r.dist = total;
    r.rate_nats = rate;
    r.rate_bits = rate / kLn2;
    r.region = "III";
    r.inputs = source_inputs(source);
    r.inputs["s1"] = s1;
    return r;
}

OutputRecord run_waterfill(const RunConfig& cfg) {
    rdpf::GaussianSource source = load_source(cfg);
    if (cfg.s1_list.size() != 1) throw std::invalid_argument("waterfill needs one --s1 value");
    double s1 = cfg.s1_list[0];
    rdpf::WaterFillResult wf = rdpf::water_filling(source.eigvals(), s1);
    OutputRecord r;
    r.command = "waterfill";
    r.s1 = s1;
    double total = 0.0;
    bool perc_finite = true;
    Vec recon_vars(wf.dist.size());
    for (std::size_t i = 0; i < wf.dist.size(); ++i) {
        double lam = source.eigvals()[i];
        double d = wf.dist[i];
        double gain = 1.0 - d / lam;
        double noise = d - (1.0 - gain) * (1.0 - gain) * lam;
        total += d;
        recon_vars[i] = lam - d;
        if (recon_vars[i] <= 0.0) perc_finite = false;
        r.dims.push_back({d, 0.0, gain, noise});
    }
    r.dist = total;
    r.rate_nats = wf.rate;
    r.rate_bits = wf.rate / kLn2;
    r.region = "I";
    // A-posteriori perception of the classical solution, when requested and finite.
    if (!cfg.metric_name.empty()) {
        PerceptionMetric metric = require_metric(cfg.metric_name);
        r.metric = rdpf::metric_name(metric);
        if (perc_finite) {
            Vec per_dim(wf.dist.size());
            for (std::size_t i = 0; i < wf.dist.size(); ++i) {
                per_dim[i] = rdpf::divergence_scalar(metric, source.eigvals()[i], recon_vars[i]);
                r.dims[i].perc = per_dim[i];
            }
            r.perc = rdpf::perception_total(metric, per_dim);
        } else if (metric == PerceptionMetric::wasserstein2_sq) {
            Vec per_dim(wf.dist.size());
            for (std::size_t i = 0; i < wf.dist.size(); ++i) {
                double lam = source.eigvals()[i];
                double sd = std::sqrt(std::max(recon_vars[i], 0.0));
                per_dim[i] = (std::sqrt(lam) - sd) * (std::sqrt(lam) - sd);
                r.dims[i].perc = per_dim[i];
            }
            r.perc = rdpf::perception_total(metric, per_dim);
        }
        // Unbounded metrics on a discarded component: perception diverges; leave P empty.
    }
    r.inputs = source_inputs(source);
    r.inputs["s1"] = s1;
    return r;
}

int run_verify(const RunConfig& cfg) {
    std::ifstream in(cfg.record_path);
    if (!in) throw std::invalid_argument("cannot open record file " + cfg.record_path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::vector<OutputRecord> records = rdpf::records_from_json_text(buf.str());

    bool all_ok = true;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const OutputRecord& r = records[i];
        if (r.status != "ok") {
            std::cout << "record " << i << ": skipped (status " << r.status << ")\n";
            continue;
        }
        double recomputed = std::numeric_limits<double>::quiet_NaN();
        if (r.command == "scalar") {
            PerceptionMetric metric = require_metric(r.metric);
            double var = r.inputs.at("var").get<double>();
            double dist = r.inputs.at("dist").get<double>();
            double perc = r.inputs.at("perc").get<double>();
            rdpf::ScalarRdpSolution sol = rdpf::scalar_rdpf(metric, var, dist, perc);
            recomputed = sol.rate;
            if (cfg.mc_samples > 0) {
                // Optional channel simulation of the recorded realization.
                rdpf::McEstimate est = rdpf::monte_carlo_channel(
                    metric, sol.realization,
                    rdpf::ScalarGaussian{r.inputs.value("mean", 0.0), var}, cfg.mc_samples,
                    cfg.seed + i);
                bool mc_ok = est.mse_hat <= 1.03 * dist && est.perception_hat <= perc + 0.03;
                std::cout << "record " << i << ": mc " << (mc_ok ? "ok" : "MISMATCH")
                          << " (mse_hat=" << est.mse_hat << " <= D=" << dist
                          << ", perception_hat=" << est.perception_hat << " <= P=" << perc
                          << ", n=" << est.n_samples << ", seed=" << est.seed << ")\n";
                all_ok = all_ok && mc_ok;
            }
        } else if (r.command == "multivar" || r.command == "sweep") {
            PerceptionMetric metric = require_metric(r.metric);
            rdpf::GaussianSource source =
                rdpf::GaussianSource::from_json_text(r.inputs.dump());
            recomputed = rdpf::alternating_minimization(
                             source, metric,
                             {r.inputs.at("s1").get<double>(), r.inputs.at("s2").get<double>()},
                             r.inputs.at("eps").get<double>(),
                             static_cast<int>(r.inputs.at("max_iters").get<long>()))
                             .rate;
        } else if (r.command == "perfect-realism") {
            rdpf::GaussianSource source = rdpf::GaussianSource::from_json_text(r.inputs.dump());
            Vec alloc =
                rdpf::perfect_realism_allocation(source.eigvals(), r.inputs.at("s1").get<double>());
            recomputed = 0.0;
            for (std::size_t k = 0; k < alloc.size(); ++k)
                recomputed += rdpf::scalar_rdpf(PerceptionMetric::wasserstein2_sq,
                                                source.eigvals()[k], alloc[k], 0.0)
                                  .rate;
        } else if (r.command == "waterfill") {
            rdpf::GaussianSource source = rdpf::GaussianSource::from_json_text(r.inputs.dump());
            recomputed =
                rdpf::water_filling(source.eigvals(), r.inputs.at("s1").get<double>()).rate;
        } else {
            std::cout << "record " << i << ": unknown command '" << r.command << "'\n";
            all_ok = false;
            continue;
        }
        double reference = r.rate_nats.value_or(std::numeric_limits<double>::quiet_NaN());
        double delta = std::abs(recomputed - reference);
        bool ok = delta <= 1e-9;
        all_ok = all_ok && ok;
        std::cout << "record " << i << ": " << (ok ? "ok" : "MISMATCH") << " (R=" << reference
                  << ", recomputed=" << recomputed << ", |delta|=" << delta << ")\n";
    }
    if (!all_ok) throw rdpf::NumericalError("verify: at least one record failed to reproduce");
    return 0;
}

std::filesystem::path resolve_output(const std::string& output) {
    std::filesystem::path p(output);
    const char* dir = std::getenv("RDPF_OUTPUT_DIR");
    if (dir != nullptr && *dir != '\0' && p.is_relative()) return std::filesystem::path(dir) / p;
    return p;
}

void emit(const RunConfig& cfg, const std::vector<OutputRecord>& records) {
    std::string payload = cfg.format == "csv"
                              ? rdpf::to_csv(records)
                              : rdpf::records_to_json(records).dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << payload;
    } else {
        std::filesystem::path path = resolve_output(cfg.output);
        std::ofstream out(path);
        if (!out) throw std::invalid_argument("cannot write " + path.string());
        out << payload;
        std::cout << "wrote " << records.size() << " record(s) to " << path.string() << "\n";
        if (cfg.bits_console && records.size() == 1 && records[0].rate_bits)
            std::cout << "R = " << *records[0].rate_bits << " bits\n";
    }
}

const std::vector<std::string> kKnownConfigKeys = {
    "command", "metric",   "var",        "mean",   "eigs",  "source",      "dist",
    "perc",    "s1",       "s2",         "eps",    "max_iters", "s2_floor", "emit_traces",
    "bits",    "output",   "format",     "threads", "record", "mc_samples", "seed"};

std::vector<double> as_double_list(const nlohmann::json& v) {
    std::vector<double> out;
    if (v.is_array())
        for (const auto& x : v) out.push_back(x.get<double>());
    else
        out.push_back(v.get<double>());
    return out;
}

RunConfig config_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    for (const auto& item : j.items()) {
        if (std::find(kKnownConfigKeys.begin(), kKnownConfigKeys.end(), item.key()) ==
            kKnownConfigKeys.end())
            throw std::invalid_argument("config: unknown key '" + item.key() + "'");
    }
    RunConfig cfg;
    cfg.command = j.at("command").get<std::string>();
    cfg.metric_name = j.value("metric", "");
    cfg.var = j.value("var", 1.0);
    cfg.mean = j.value("mean", 0.0);
    if (j.contains("eigs")) cfg.eigs = j.at("eigs").get<Vec>();
    cfg.source_path = j.value("source", "");
    cfg.dist = j.value("dist", 0.0);
    cfg.perc = j.value("perc", 0.0);
    if (j.contains("s1")) cfg.s1_list = as_double_list(j.at("s1"));
    if (j.contains("s2")) cfg.s2_list = as_double_list(j.at("s2"));
    cfg.eps = j.value("eps", 1e-10);
    cfg.max_iters = j.value("max_iters", 200000L);
    cfg.s2_floor = j.value("s2_floor", true);
    cfg.emit_traces = j.value("emit_traces", false);
    cfg.bits_console = j.value("bits", false);
    cfg.output = j.value("output", "");
    cfg.format = j.value("format", "json");
    cfg.threads = j.value("threads", 0);
    cfg.record_path = j.value("record", "");
    cfg.mc_samples = j.value("mc_samples", 0L);
    cfg.seed = j.value("seed", 1234UL);
    return cfg;
}

int dispatch(const RunConfig& cfg) {
    std::vector<OutputRecord> records;
    if (cfg.command == "scalar") {
        records.push_back(run_scalar(cfg));
    } else if (cfg.command == "multivar") {
        PerceptionMetric metric = require_metric(cfg.metric_name);
        if (cfg.s1_list.size() != 1 || cfg.s2_list.size() != 1)
            throw std::invalid_argument("multivar needs exactly one --s1 and one --s2");
        records.push_back(run_multivar_point(load_source(cfg), metric, cfg.s1_list[0],
                                             effective_s2(cfg, metric, cfg.s2_list[0]), cfg.eps,
                                             cfg.max_iters, cfg.emit_traces));
    } else if (cfg.command == "sweep") {
        records = run_sweep(cfg);
    } else if (cfg.command == "perfect-realism") {
        records.push_back(run_perfect_realism(cfg));
    } else if (cfg.command == "waterfill") {
        records.push_back(run_waterfill(cfg));
    } else if (cfg.command == "verify") {
        return run_verify(cfg);
    } else {
        throw std::invalid_argument("unknown command '" + cfg.command + "'");
    }
    emit(cfg, records);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path;
    std::string s1_csv, s2_csv, eigs_csv;

    CLI::App app{"Gaussian rate-distortion-perception computations"};
    app.require_subcommand(0, 1);
    app.add_option("--config", config_path, "JSON config file (replaces subcommand flags)");

    auto add_output_opts = [&](CLI::App* sub) {
        sub->add_option("--output", cfg.output, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--bits", cfg.bits_console, "print the console rate in bits");
    };
    auto add_source_opts = [&](CLI::App* sub) {
        sub->add_option("--eigs", eigs_csv, "comma-separated source eigenvalues");
        sub->add_option("--source", cfg.source_path, "JSON source descriptor file");
    };

    CLI::App* scalar = app.add_subcommand("scalar", "closed-form scalar solution");
    scalar->add_option("--metric", cfg.metric_name)->required();
    scalar->add_option("--var", cfg.var, "source variance");
    scalar->add_option("--mean", cfg.mean, "source mean");
    scalar->add_option("--dist", cfg.dist, "distortion level D")->required();
    scalar->add_option("--perc", cfg.perc, "perception level P")->required();
    add_output_opts(scalar);

    CLI::App* multivar = app.add_subcommand("multivar", "alternating minimization at one (s1, s2)");
    multivar->add_option("--metric", cfg.metric_name)->required();
    add_source_opts(multivar);
    multivar->add_option("--s1", s1_csv, "distortion multiplier")->required();
    multivar->add_option("--s2", s2_csv, "perception multiplier")->required();
    multivar->add_option("--eps", cfg.eps, "convergence tolerance");
    multivar->add_option("--max-iters", cfg.max_iters);
    multivar->add_flag("--no-s2-floor", "disable the default s2 floor for kl/rkl/gjs");
    multivar->add_flag("--emit-trace", cfg.emit_traces, "include the gap trace in JSON output");
    add_output_opts(multivar);

    CLI::App* sweep = app.add_subcommand("sweep", "grid of (s1, s2) multipliers");
    sweep->add_option("--metric", cfg.metric_name)->required();
    add_source_opts(sweep);
    sweep->add_option("--s1", s1_csv, "comma-separated s1 grid")->required();
    sweep->add_option("--s2", s2_csv, "comma-separated s2 grid")->required();
    sweep->add_option("--eps", cfg.eps);
    sweep->add_option("--max-iters", cfg.max_iters);
    sweep->add_flag("--no-s2-floor", "disable the default s2 floor for kl/rkl/gjs");
    sweep->add_flag("--emit-traces", cfg.emit_traces, "include gap traces in JSON output");
    sweep->add_option("--threads", cfg.threads, "worker count (default: hardware)");
    add_output_opts(sweep);

    CLI::App* pr = app.add_subcommand("perfect-realism", "zero-perception allocation");
    add_source_opts(pr);
    pr->add_option("--s1", s1_csv)->required();
    add_output_opts(pr);

    CLI::App* wf = app.add_subcommand("waterfill", "classical reverse water-filling baseline");
    add_source_opts(wf);
    wf->add_option("--s1", s1_csv)->required();
    wf->add_option("--metric", cfg.metric_name, "report a-posteriori perception in this metric");
    add_output_opts(wf);

    CLI::App* verify = app.add_subcommand("verify", "recompute a JSON record file");
    verify->add_option("record", cfg.record_path, "record file")->required();
    verify->add_option("--mc-samples", cfg.mc_samples,
                       "also Monte-Carlo check scalar realizations with this many samples");
    verify->add_option("--seed", cfg.seed, "seed for the Monte-Carlo check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) {
            cfg = config_from_json(config_path);
        } else {
            if (app.get_subcommands().empty())
                throw std::invalid_argument("give a subcommand or --config (see --help)");
            CLI::App* sub = app.get_subcommands()[0];
            cfg.command = sub->get_name();
            const CLI::Option* floor_opt = sub->get_option_no_throw("--no-s2-floor");
            if (floor_opt != nullptr && floor_opt->count() > 0) cfg.s2_floor = false;
            auto parse_list = [](const std::string& csv) {
                std::vector<double> out;
                std::stringstream ss(csv);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty()) out.push_back(std::stod(item));
                return out;
            };
            if (!s1_csv.empty()) cfg.s1_list = parse_list(s1_csv);
            if (!s2_csv.empty()) cfg.s2_list = parse_list(s2_csv);
            if (!eigs_csv.empty()) cfg.eigs = parse_list(eigs_csv);
        }
        return dispatch(cfg);
    } catch (const rdpf::NumericalError& e) {
        nlohmann::json err = {{"error", {{"type", "numerical"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        nlohmann::json err = {{"error", {{"type", "config"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
}
