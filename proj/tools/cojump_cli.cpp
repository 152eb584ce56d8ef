// Command-line front end: estimation on CSV data, path simulation, Monte
// Carlo runs and threshold sweeps. Every command drops a manifest.json into
// its output directory that is sufficient to reproduce the run.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cojump/config_file.hpp"
#include "cojump/csv.hpp"
#include "cojump/estimators.hpp"
#include "cojump/experiments.hpp"
#include "cojump/export.hpp"
#include "cojump/simulate.hpp"
#include "cojump/threshold.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;      // unreadable input: CLI, CSV or config syntax
constexpr int kExitValidation = 3; // readable input with inadmissible values
constexpr int kExitDegenerate = 4; // degenerate statistics promoted by --strict

constexpr const char* kVersion = "0.1.0";

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& from_cli) {
    if (from_cli) return *from_cli;
    if (const char* env = std::getenv("COJUMP_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::runtime_error(std::string("COJUMP_SEED is not an integer: '") + env + "'");
        }
    }
    return 0;
}

void write_manifest(const fs::path& outdir, const std::string& command,
                    const std::vector<std::string>& argv, std::uint64_t seed,
                    const std::optional<std::string>& config_text,
                    const std::vector<std::string>& outputs, unsigned threads, double wall_ms) {
    ordered_json j;
    j["schema_version"] = cojump::kSchemaVersion;
    j["command"] = command;
    j["argv"] = argv;
    j["master_seed"] = seed;
    j["code_version"] = kVersion;
    j["threads"] = threads;
    j["config"] = config_text ? ordered_json(*config_text) : ordered_json(nullptr);
    j["outputs"] = outputs;
    j["wall_clock_ms"] = wall_ms;
    cojump::write_text_file(j.dump(2) + "\n", (outdir / "manifest.json").string());
}

std::string read_file_text(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::runtime_error("cannot open " + filename);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct ModelOverrides {
    std::optional<double> lambda1, lambda3, rho, rho_j;

    void apply(cojump::ModelConfig& model) const {
        if (auto* m1 = std::get_if<cojump::Model1Config>(&model)) {
            if (lambda1) m1->lambda1 = *lambda1;
            if (lambda3) m1->lambda3 = *lambda3;
            if (rho) m1->rho = *rho;
            if (rho_j) m1->rho_j = *rho_j;
        } else {
            if (lambda1 || lambda3)
                throw std::invalid_argument("--lambda1/--lambda3 apply to model1 configs only");
            auto& m2 = std::get<cojump::Model2Config>(model);
            if (rho) m2.rho = *rho;
            if (rho_j) m2.rho_j = *rho_j;
        }
        cojump::validate(model);
    }
};

cojump::ModelConfig load_model(const std::string& config_path, const ModelOverrides& ov) {
    cojump::ModelConfig model = cojump::model_from_config_file(config_path);
    ov.apply(model);
    return model;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

struct EstimateArgs {
    std::string file1, file2;
    double c = 0.1;
    double beta = 0.99;
    bool async = false;
    std::optional<double> upto;
    std::string outdir;
    bool strict = false;
};

int run_estimate(const EstimateArgs& a, const std::vector<std::string>& argv) {
    Clock clock;
    const cojump::ThresholdSpec spec = cojump::validate_threshold_spec(a.c, a.beta);
    const cojump::SampledPath p1 = cojump::read_sampled_path_csv(a.file1);
    const cojump::SampledPath p2 = cojump::read_sampled_path_csv(a.file2);

    std::string json;
    bool degenerate = false;
    if (a.async) {
        const cojump::AsyncPanel panel(p1, p2);
        const double h = panel.combined_mesh();
        const double r_h = cojump::threshold_value(spec, h);
        const double ic = cojump::hy_threshold_ic(panel, r_h, a.upto);
        const std::size_t n1 =
            a.upto ? p1.grid.intervals_upto(*a.upto) : p1.grid.intervals();
        const std::size_t n2 =
            a.upto ? p2.grid.intervals_upto(*a.upto) : p2.grid.intervals();
        const auto inc1 = p1.increments();
        const auto inc2 = p2.increments();
        const double iv1 =
            cojump::threshold_iv(std::span<const double>(inc1).first(n1), r_h);
        const double iv2 =
            cojump::threshold_iv(std::span<const double>(inc2).first(n2), r_h);
        ordered_json j;
        j["schema_version"] = cojump::kSchemaVersion;
        j["mode"] = "async";
        j["ic_hat"] = ic;
        j["iv1_hat"] = iv1;
        j["iv2_hat"] = iv2;
        j["r_h"] = r_h;
        j["h"] = h;
        json = j.dump(2) + "\n";
    } else {
        const cojump::SyncPanel panel = cojump::make_sync_panel(p1, p2);
        const double r_h = cojump::threshold_value(spec, panel.mesh());
        const cojump::CovariationEstimates est = cojump::estimate_panel(panel, r_h, a.upto);
        degenerate = !est.rho_hat || est.avar_clamped;
        json = cojump::estimates_to_json(est);
    }

    std::cout << json;
    if (!a.outdir.empty()) {
        fs::create_directories(a.outdir);
        cojump::write_text_file(json, (fs::path(a.outdir) / "estimates.json").string());
        write_manifest(a.outdir, "estimate", argv, 0, std::nullopt, {"estimates.json"}, 1,
                       clock.ms());
    }
    if (degenerate) {
        std::cerr << "warning: degenerate statistics (undefined rho or clamped variance)\n";
        if (a.strict) return kExitDegenerate;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string outdir;
    double coarse_step = 300.0;
    ModelOverrides overrides;
};

int run_simulate(const SimulateArgs& a, const std::vector<std::string>& argv) {
    Clock clock;
    const cojump::ModelConfig model = load_model(a.config, a.overrides);
    const std::uint64_t seed = resolve_seed(a.seed);

    const cojump::PathBundle bundle = cojump::build_paths(model, cojump::RngSeed{seed, 0});
    const double horizon = bundle.grid->horizon();
    const double n_coarse_d = horizon * cojump::kSecondsPerDay / a.coarse_step;
    if (std::abs(n_coarse_d - std::round(n_coarse_d)) > 1e-9)
        throw std::invalid_argument("simulate: coarse step must divide the horizon evenly");
    const cojump::TimeGrid coarse =
        cojump::TimeGrid::uniform(horizon, static_cast<std::size_t>(std::llround(n_coarse_d)));
    const cojump::SampledPath x1(*bundle.grid, bundle.x1);
    const cojump::SampledPath x2(*bundle.grid, bundle.x2);
    const cojump::SampledPath c1 = cojump::resample(x1, coarse);
    const cojump::SampledPath c2 = cojump::resample(x2, coarse);

    fs::create_directories(a.outdir);
    const fs::path out(a.outdir);
    cojump::write_bundle_csv(bundle, (out / "bundle.csv").string());
    {
        std::ofstream panel(out / "panel.csv");
        if (!panel) throw std::runtime_error("cannot write panel.csv");
        panel << "time,X1,X2\n";
        char buf[120];
        for (std::size_t i = 0; i < coarse.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", coarse[i], c1.values[i],
                          c2.values[i]);
            panel << buf;
        }
    }
    cojump::write_text_file(cojump::truths_to_json(bundle.truths),
                            (out / "truths.json").string());
    write_manifest(out, "simulate", argv, seed, read_file_text(a.config),
                   {"bundle.csv", "panel.csv", "truths.json"}, 1, clock.ms());
    std::cout << "wrote " << (out / "bundle.csv").string() << " (+ panel.csv, truths.json)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// mc
// ---------------------------------------------------------------------------

struct McArgs {
    std::string config;
    int paths = 500;
    std::optional<std::uint64_t> seed;
    double c = 0.1;
    double beta = 0.99;
    unsigned threads = 0;
    double coarse_step = 300.0;
    std::string outdir;
    bool strict = false;
    ModelOverrides overrides;
};

int run_mc(const McArgs& a, const std::vector<std::string>& argv) {
    Clock clock;
    if (a.paths < 1) throw std::invalid_argument("mc: --paths must be at least 1");
    const cojump::ModelConfig model = load_model(a.config, a.overrides);
    const cojump::ThresholdSpec spec = cojump::validate_threshold_spec(a.c, a.beta);
    const std::uint64_t seed = resolve_seed(a.seed);

    cojump::McOptions opts;
    opts.threads = a.threads;
    opts.coarse_step_seconds = a.coarse_step;
    const cojump::BiasSummary summary =
        cojump::run_monte_carlo(model, spec, a.paths, seed, opts);

    fs::create_directories(a.outdir);
    const fs::path out(a.outdir);
    cojump::write_text_file(cojump::summary_to_json(summary), (out / "summary.json").string());
    cojump::write_per_path_csv(summary, (out / "per_path.csv").string());
    cojump::write_qq_csv(summary, (out / "nb_qq.csv").string());
    write_manifest(out, "mc", argv, seed, read_file_text(a.config),
                   {"summary.json", "per_path.csv", "nb_qq.csv"}, a.threads, clock.ms());

    std::cout << "paths " << summary.n_paths << ", mean bias "
              << summary.mean_bias_pct << (summary.absolute_bias ? " (absolute)" : " %")
              << ", failures " << summary.n_failed << "\n";
    if (summary.n_failed > 0) {
        std::cerr << "warning: " << summary.n_failed << " path(s) with degenerate statistics\n";
        if (a.strict) return kExitDegenerate;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepArgs {
    std::string config;
    int paths = 300;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    double coarse_step = 300.0;
    double c_from = 0.1, c_to = 5.6, c_step = 0.5;
    double beta_from = 0.05, beta_to = 0.99, beta_step = 0.05;
    std::string outdir;
    ModelOverrides overrides;
};

std::vector<double> arange(double from, double to, double step, const char* what) {
    if (!(step > 0.0)) throw std::invalid_argument(std::string(what) + ": step must be positive");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = from + step * i;
        if (v > to + 1e-9) break;
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty range");
    return out;
}

int run_sweep(const SweepArgs& a, const std::vector<std::string>& argv) {
    Clock clock;
    if (a.paths < 1) throw std::invalid_argument("sweep: --paths must be at least 1");
    const cojump::ModelConfig model = load_model(a.config, a.overrides);
    const std::uint64_t seed = resolve_seed(a.seed);

    cojump::SweepGrid grid;
    grid.c_values = arange(a.c_from, a.c_to, a.c_step, "sweep c grid");
    grid.beta_values = arange(a.beta_from, a.beta_to, a.beta_step, "sweep beta grid");

    cojump::McOptions opts;
    opts.threads = a.threads;
    opts.coarse_step_seconds = a.coarse_step;
    const cojump::SweepResult result =
        cojump::sweep_thresholds(model, grid, a.paths, seed, opts);

    fs::create_directories(a.outdir);
    const fs::path out(a.outdir);
    cojump::write_sweep_csv(result, (out / "sweep.csv").string());
    write_manifest(out, "sweep", argv, seed, read_file_text(a.config), {"sweep.csv"}, a.threads,
                   clock.ms());
    std::cout << "sweep grid " << result.c_values.size() << " x " << result.beta_values.size()
              << " written to " << (out / "sweep.csv").string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Threshold covariation estimators, co-jump separation and the "
                 "Monte Carlo harness around them"};
    app.require_subcommand(1);
    std::vector<std::string> raw_args(argv, argv + argc);

    EstimateArgs est;
    auto* cmd_est = app.add_subcommand(
        "estimate", "Estimate covariation statistics from two time,value CSV files");
    cmd_est->add_option("file1", est.file1, "CSV observations of process 1")->required();
    cmd_est->add_option("file2", est.file2, "CSV observations of process 2")->required();
    cmd_est->add_option("--c", est.c, "threshold scale in r_h = c*h^beta");
    cmd_est->add_option("--beta", est.beta, "threshold power in r_h = c*h^beta");
    cmd_est->add_flag("--async", est.async, "treat observations as asynchronous");
    double est_upto = 0.0;
    auto* est_upto_opt =
        cmd_est->add_option("--upto", est_upto, "estimate up to this time only");
    cmd_est->add_option("--out", est.outdir, "output directory (estimates.json + manifest)");
    cmd_est->add_flag("--strict", est.strict, "exit 4 on degenerate statistics");

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "Simulate one bivariate path with truths");
    cmd_sim->add_option("--config", sim.config, "model config file")->required();
    std::uint64_t sim_seed = 0;
    auto* sim_seed_opt = cmd_sim->add_option("--seed", sim_seed, "master seed (env COJUMP_SEED)");
    cmd_sim->add_option("--out", sim.outdir, "output directory")->required();
    cmd_sim->add_option("--coarse-step", sim.coarse_step, "coarse sampling step in seconds");
    cmd_sim->add_option("--lambda1", sim.overrides.lambda1, "override jump intensity 1");
    cmd_sim->add_option("--lambda3", sim.overrides.lambda3, "override jump intensity 3");
    cmd_sim->add_option("--rho", sim.overrides.rho, "override Brownian correlation");
    cmd_sim->add_option("--rho-j", sim.overrides.rho_j, "override jump correlation");

    McArgs mc;
    auto* cmd_mc = app.add_subcommand("mc", "Monte Carlo bias study at one threshold");
    cmd_mc->add_option("--config", mc.config, "model config file")->required();
    cmd_mc->add_option("--paths", mc.paths, "number of simulated paths");
    std::uint64_t mc_seed = 0;
    auto* mc_seed_opt = cmd_mc->add_option("--seed", mc_seed, "master seed (env COJUMP_SEED)");
    cmd_mc->add_option("--c", mc.c, "threshold scale");
    cmd_mc->add_option("--beta", mc.beta, "threshold power");
    cmd_mc->add_option("--threads", mc.threads, "worker cap (0 = hardware)");
    cmd_mc->add_option("--coarse-step", mc.coarse_step, "coarse sampling step in seconds");
    cmd_mc->add_option("--out", mc.outdir, "output directory")->required();
    cmd_mc->add_flag("--strict", mc.strict, "exit 4 on degenerate statistics");
    cmd_mc->add_option("--lambda1", mc.overrides.lambda1, "override jump intensity 1");
    cmd_mc->add_option("--lambda3", mc.overrides.lambda3, "override jump intensity 3");
    cmd_mc->add_option("--rho", mc.overrides.rho, "override Brownian correlation");
    cmd_mc->add_option("--rho-j", mc.overrides.rho_j, "override jump correlation");

    SweepArgs sw;
    auto* cmd_sw = app.add_subcommand("sweep", "Mean-bias surface over a (c, beta) grid");
    cmd_sw->add_option("--config", sw.config, "model config file")->required();
    cmd_sw->add_option("--paths", sw.paths, "paths per grid (shared across cells)");
    std::uint64_t sw_seed = 0;
    auto* sw_seed_opt = cmd_sw->add_option("--seed", sw_seed, "master seed (env COJUMP_SEED)");
    cmd_sw->add_option("--threads", sw.threads, "worker cap (0 = hardware)");
    cmd_sw->add_option("--coarse-step", sw.coarse_step, "coarse sampling step in seconds");
    cmd_sw->add_option("--c-from", sw.c_from, "c grid start");
    cmd_sw->add_option("--c-to", sw.c_to, "c grid end (inclusive)");
    cmd_sw->add_option("--c-step", sw.c_step, "c grid step");
    cmd_sw->add_option("--beta-from", sw.beta_from, "beta grid start");
    cmd_sw->add_option("--beta-to", sw.beta_to, "beta grid end (inclusive)");
    cmd_sw->add_option("--beta-step", sw.beta_step, "beta grid step");
    cmd_sw->add_option("--out", sw.outdir, "output directory")->required();
    cmd_sw->add_option("--lambda1", sw.overrides.lambda1, "override jump intensity 1");
    cmd_sw->add_option("--lambda3", sw.overrides.lambda3, "override jump intensity 3");
    cmd_sw->add_option("--rho", sw.overrides.rho, "override Brownian correlation");
    cmd_sw->add_option("--rho-j", sw.overrides.rho_j, "override jump correlation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (cmd_est->parsed()) {
            if (est_upto_opt->count() > 0) est.upto = est_upto;
            return run_estimate(est, raw_args);
        }
        if (cmd_sim->parsed()) {
            if (sim_seed_opt->count() > 0) sim.seed = sim_seed;
            return run_simulate(sim, raw_args);
        }
        if (cmd_mc->parsed()) {
            if (mc_seed_opt->count() > 0) mc.seed = mc_seed;
            return run_mc(mc, raw_args);
        }
        if (cmd_sw->parsed()) {
            if (sw_seed_opt->count() > 0) sw.seed = sw_seed;
            return run_sweep(sw, raw_args);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
