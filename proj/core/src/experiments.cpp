#include "cojump/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cojump/compensated.hpp"
#include "cojump/estimators.hpp"
#include "cojump/sampled_path.hpp"
#include "cojump/simulate.hpp"
#include "cojump/stats.hpp"

namespace cojump {

namespace {

unsigned effective_threads(unsigned requested, std::size_t n) {
    unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(n, 1)));
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = effective_threads(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load(std::memory_order_relaxed)) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct Protocol {
    std::shared_ptr<const TimeGrid> fine_grid;
    TimeGrid coarse_grid;
    std::size_t stride; // fine steps per coarse interval
    double h;           // coarse mesh
};

double model_horizon(const ModelConfig& model) {
    return std::visit([](const auto& m) { return m.horizon_days; }, model);
}

double model_fine_step(const ModelConfig& model) {
    return std::visit([](const auto& m) { return m.fine_step_seconds; }, model);
}

Protocol make_protocol(const ModelConfig& model, const McOptions& opts) {
    validate(model);
    const double fine_step = model_fine_step(model);
    const double horizon = model_horizon(model);
    if (!(opts.coarse_step_seconds > 0.0))
        throw std::invalid_argument("monte carlo: coarse_step_seconds must be positive");
    const double ratio = opts.coarse_step_seconds / fine_step;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
        throw std::invalid_argument("monte carlo: fine step must divide the coarse step");
    const double n_coarse_d = horizon * kSecondsPerDay / opts.coarse_step_seconds;
    if (std::abs(n_coarse_d - std::round(n_coarse_d)) > 1e-9)
        throw std::invalid_argument("monte carlo: coarse step must divide the horizon evenly");

    Protocol p{nullptr, TimeGrid::uniform(horizon, static_cast<std::size_t>(std::llround(n_coarse_d))),
               static_cast<std::size_t>(std::llround(ratio)), 0.0};
    p.fine_grid = std::visit([](const auto& m) { return make_fine_grid(m); }, model);
    p.h = p.coarse_grid.mesh();
    return p;
}

PathBundle build_bundle(const ModelConfig& model, const RngSeed& seed,
                        const std::shared_ptr<const TimeGrid>& grid) {
    return std::visit([&](const auto& m) { return build_paths(m, seed, grid); }, model);
}

SyncPanel coarse_panel(const PathBundle& bundle, const TimeGrid& coarse) {
    SampledPath p1(*bundle.grid, bundle.x1);
    SampledPath p2(*bundle.grid, bundle.x2);
    return make_sync_panel(resample(p1, coarse), resample(p2, coarse));
}

std::optional<double> pct_bias(double estimate, double truth) {
    if (truth == 0.0) return std::nullopt;
    return 100.0 * (estimate - truth) / truth;
}

double truncated_fraction(const SyncPanel& panel, double r_h) {
    std::size_t over = 0;
    for (double d : panel.returns1) over += (d * d > r_h);
    for (double d : panel.returns2) over += (d * d > r_h);
    return static_cast<double>(over) / static_cast<double>(2 * panel.intervals());
}

std::vector<double> defined_values(const std::vector<PathRecord>& records,
                                   std::optional<double> PathRecord::* field) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records)
        if (r.*field) out.push_back(*(r.*field));
    return out;
}

// Sum of fine-step jump cross products within each coarse interval.
std::vector<double> interval_cojump_truth(const PathBundle& bundle, std::size_t stride,
                                          std::size_t n_coarse) {
    std::vector<double> truth(n_coarse, 0.0);
    for (std::size_t j = 0; j < n_coarse; ++j) {
        CompensatedSum acc;
        for (std::size_t k = j * stride; k < (j + 1) * stride; ++k)
            acc.add((bundle.j1[k + 1] - bundle.j1[k]) * (bundle.j2[k + 1] - bundle.j2[k]));
        truth[j] = acc.value();
    }
    return truth;
}

struct LargestCojump {
    std::size_t interval;
    double truth;
    std::array<double, 3> bias_pct; // variants 5, 6, 7
};

// Variant errors at the interval carrying the path's largest true co-jump.
std::optional<LargestCojump> largest_cojump_biases(const PathBundle& bundle,
                                                   const SyncPanel& panel,
                                                   std::size_t stride, double r_h) {
    const std::size_t n_coarse = panel.intervals();
    const std::vector<double> truth = interval_cojump_truth(bundle, stride, n_coarse);
    std::size_t best = 0;
    double best_abs = 0.0;
    for (std::size_t j = 0; j < n_coarse; ++j) {
        if (std::abs(truth[j]) > best_abs) {
            best_abs = std::abs(truth[j]);
            best = j;
        }
    }
    if (best_abs == 0.0) return std::nullopt;

    const double d1 = panel.returns1[best];
    const double d2 = panel.returns2[best];
    const bool over1 = d1 * d1 > r_h;
    const bool over2 = d2 * d2 > r_h;
    const double full = d1 * d2;
    const double v5 = full - (over1 ? 0.0 : d1) * (over2 ? 0.0 : d2);
    const double v6 = (over1 ? d1 : 0.0) * (over2 ? d2 : 0.0);
    LargestCojump out;
    out.interval = best;
    out.truth = truth[best];
    out.bias_pct = {100.0 * (v5 - truth[best]) / truth[best],
                    100.0 * (v6 - truth[best]) / truth[best],
                    100.0 * (full - truth[best]) / truth[best]};
    return out;
}

} // namespace

BiasSummary run_monte_carlo(const ModelConfig& model, const ThresholdSpec& spec,
                            int n_paths, std::uint64_t master_seed, const McOptions& opts) {
    if (n_paths < 1)
        throw std::invalid_argument("run_monte_carlo: n_paths must be at least 1");
    validate_threshold_spec(spec.c, spec.beta);
    const Protocol proto = make_protocol(model, opts);
    const double r_h = threshold_value(spec, proto.h);

    std::vector<PathRecord> records(static_cast<std::size_t>(n_paths));
    parallel_for(records.size(), opts.threads, [&](std::size_t i) {
        const RngSeed seed{master_seed, static_cast<std::uint64_t>(i)};
        const PathBundle bundle = build_bundle(model, seed, proto.fine_grid);
        const SyncPanel panel = coarse_panel(bundle, proto.coarse_grid);
        const CovariationEstimates est = estimate_panel(panel, r_h);

        PathRecord rec;
        rec.path_index = i;
        rec.ic_true = bundle.truths.ic;
        rec.cojump_true = bundle.truths.cojump_sum;
        rec.ic_hat = est.ic_hat;
        rec.iv1_hat = est.iv1_hat;
        rec.iv2_hat = est.iv2_hat;
        rec.qcov = est.qcov;
        rec.cojump_hat = est.cojump_sum;
        rec.bias_pct = pct_bias(est.ic_hat, bundle.truths.ic);
        rec.qcov_bias_pct = pct_bias(est.qcov, bundle.truths.ic);
        rec.nb = standardized_ic_error(est.ic_hat, bundle.truths.ic, est.avar_hat, est.h);
        rec.cojump_bias_pct = pct_bias(est.cojump_sum, bundle.truths.cojump_sum);
        rec.rho_hat = est.rho_hat;
        if (auto lc = largest_cojump_biases(bundle, panel, proto.stride, r_h))
            rec.variant_bias_pct = lc->bias_pct;
        rec.truncated_fraction = truncated_fraction(panel, r_h);
        rec.avar_clamped = est.avar_clamped;
        records[i] = std::move(rec);
    });

    BiasSummary s;
    s.master_seed = master_seed;
    s.n_paths = n_paths;
    // With a zero true IC (e.g. rho = 0) relative bias is undefined; report
    // absolute errors instead.
    s.absolute_bias = std::all_of(records.begin(), records.end(),
                                  [](const PathRecord& r) { return r.ic_true == 0.0; });
    if (s.absolute_bias) {
        for (auto& r : records) {
            r.bias_pct = r.ic_hat - r.ic_true;
            r.qcov_bias_pct = r.qcov - r.ic_true;
        }
    }

    std::vector<double> biases = defined_values(records, &PathRecord::bias_pct);
    std::vector<double> qbiases = defined_values(records, &PathRecord::qcov_bias_pct);
    std::vector<double> nbs = defined_values(records, &PathRecord::nb);
    std::vector<double> cjs = defined_values(records, &PathRecord::cojump_bias_pct);

    if (!biases.empty()) {
        s.mean_bias_pct = mean(biases);
        s.median_bias_pct = median(biases);
        s.std_bias_pct = biases.size() >= 2 ? sample_stddev(biases) : 0.0;
    }
    if (!qbiases.empty()) s.mean_qcov_bias_pct = mean(qbiases);
    if (nbs.size() >= 2) {
        s.nb_mean = mean(nbs);
        s.nb_std = sample_stddev(nbs);
        s.nb_qq = qq_pairs(nbs, default_qq_levels());
    }
    if (!cjs.empty()) {
        s.cojump_mean_bias_pct = mean(cjs);
        if (cjs.size() >= 2) s.cojump_std_bias_pct = sample_stddev(cjs);
    }
    s.cojump_defined = static_cast<int>(cjs.size());
    for (int v = 0; v < 3; ++v) {
        CompensatedSum acc;
        int count = 0;
        for (const auto& r : records) {
            if (!r.variant_bias_pct) continue;
            acc.add((*r.variant_bias_pct)[static_cast<std::size_t>(v)]);
            ++count;
        }
        if (count > 0)
            s.variant_mean_bias_pct[static_cast<std::size_t>(v)] =
                acc.value() / static_cast<double>(count);
        s.variant_defined = count;
    }
    for (const auto& r : records) {
        s.mean_truncated_fraction += r.truncated_fraction;
        s.clamp_count += r.avar_clamped;
        s.n_failed += (!r.nb || !r.rho_hat);
    }
    s.mean_truncated_fraction /= static_cast<double>(n_paths);
    s.records = std::move(records);
    return s;
}

SweepGrid SweepGrid::defaults() {
    SweepGrid g;
    for (int i = 0;; ++i) {
        const double c = 0.1 + 0.5 * i;
        if (c > 5.6 + 1e-9) break;
        g.c_values.push_back(c);
    }
    for (int i = 1;; ++i) {
        const double beta = 0.05 * i;
        if (beta > 0.99) break;
        g.beta_values.push_back(beta);
    }
    return g;
}

SweepResult sweep_thresholds(const ModelConfig& model, const SweepGrid& grid,
                             int n_paths, std::uint64_t master_seed, const McOptions& opts) {
    if (n_paths < 1)
        throw std::invalid_argument("sweep_thresholds: n_paths must be at least 1");
    if (grid.c_values.empty() || grid.beta_values.empty())
        throw std::invalid_argument("sweep_thresholds: empty grid");
    for (double c : grid.c_values)
        for (double beta : grid.beta_values) validate_threshold_spec(c, beta);

    const Protocol proto = make_protocol(model, opts);
    const std::size_t cells = grid.c_values.size() * grid.beta_values.size();
    std::vector<double> r_hs(cells);
    for (std::size_t ci = 0; ci < grid.c_values.size(); ++ci)
        for (std::size_t bi = 0; bi < grid.beta_values.size(); ++bi)
            r_hs[ci * grid.beta_values.size() + bi] =
                threshold_value(ThresholdSpec{grid.c_values[ci], grid.beta_values[bi]}, proto.h);

    // Common random numbers: one panel per path, every cell sees the same one.
    std::vector<std::vector<double>> per_path(static_cast<std::size_t>(n_paths));
    std::vector<double> ic_truths(static_cast<std::size_t>(n_paths));
    parallel_for(per_path.size(), opts.threads, [&](std::size_t i) {
        const RngSeed seed{master_seed, static_cast<std::uint64_t>(i)};
        const PathBundle bundle = build_bundle(model, seed, proto.fine_grid);
        const SyncPanel panel = coarse_panel(bundle, proto.coarse_grid);
        std::vector<double> vals(cells);
        for (std::size_t cell = 0; cell < cells; ++cell) {
            const double ic_hat = threshold_ic(panel, r_hs[cell]);
            vals[cell] = bundle.truths.ic != 0.0
                             ? 100.0 * (ic_hat - bundle.truths.ic) / bundle.truths.ic
                             : ic_hat;
        }
        ic_truths[i] = bundle.truths.ic;
        per_path[i] = std::move(vals);
    });

    SweepResult out;
    out.c_values = grid.c_values;
    out.beta_values = grid.beta_values;
    out.n_paths = n_paths;
    out.absolute_bias =
        std::all_of(ic_truths.begin(), ic_truths.end(), [](double v) { return v == 0.0; });
    out.mean_bias.assign(grid.c_values.size(),
                         std::vector<double>(grid.beta_values.size(), 0.0));
    for (std::size_t ci = 0; ci < grid.c_values.size(); ++ci) {
        for (std::size_t bi = 0; bi < grid.beta_values.size(); ++bi) {
            CompensatedSum acc;
            for (const auto& vals : per_path) acc.add(vals[ci * grid.beta_values.size() + bi]);
            out.mean_bias[ci][bi] = acc.value() / static_cast<double>(n_paths);
        }
    }
    return out;
}

NormalizedBiasStats normalized_bias_stats(const BiasSummary& summary) {
    std::vector<double> nbs = defined_values(summary.records, &PathRecord::nb);
    if (nbs.size() < 2)
        throw std::invalid_argument("normalized_bias_stats: need at least two defined values");
    NormalizedBiasStats out;
    out.mean = mean(nbs);
    out.stddev = sample_stddev(nbs);
    out.degenerate = out.stddev == 0.0;
    out.qq = qq_pairs(nbs, default_qq_levels());
    return out;
}

namespace {

std::size_t fine_bucket(const TimeGrid& grid, double t) {
    const auto s = grid.stamps();
    auto it = std::lower_bound(s.begin(), s.end(), t);
    std::size_t idx = static_cast<std::size_t>(it - s.begin());
    if (idx == 0) idx = 1;
    return idx - 1;
}

// Cheap test for "this path has a co-jump" from the Model-1 skeleton alone.
bool skeleton_has_cojump(const Model1Config& cfg, const Model1JumpSkeleton& sk,
                         const TimeGrid& fine) {
    if (cfg.rho_j != 0.0) return !sk.jumps1.times.empty();
    // rho_j = 0: J2 = J3, a co-jump needs both drivers inside one fine step.
    if (sk.jumps1.times.empty() || sk.jumps3.times.empty()) return false;
    for (double a : sk.jumps1.times)
        for (double b : sk.jumps3.times)
            if (fine_bucket(fine, a) == fine_bucket(fine, b)) return true;
    return false;
}

} // namespace

CojumpStudy cojump_variant_study(const ModelConfig& model, const ThresholdSpec& spec,
                                 int n_paths, std::uint64_t master_seed,
                                 const McOptions& opts) {
    if (n_paths < 1)
        throw std::invalid_argument("cojump_variant_study: n_paths must be at least 1");
    validate_threshold_spec(spec.c, spec.beta);
    const Protocol proto = make_protocol(model, opts);
    const double r_h = threshold_value(spec, proto.h);

    const Model1Config* m1 = std::get_if<Model1Config>(&model);

    std::vector<std::optional<CojumpStudyRecord>> slots(static_cast<std::size_t>(n_paths));
    parallel_for(slots.size(), opts.threads, [&](std::size_t i) {
        const RngSeed seed{master_seed, static_cast<std::uint64_t>(i)};
        if (m1 != nullptr) {
            const Model1JumpSkeleton sk = model1_jump_skeleton(*m1, seed);
            if (!skeleton_has_cojump(*m1, sk, *proto.fine_grid)) return; // excluded
        }
        const PathBundle bundle = build_bundle(model, seed, proto.fine_grid);
        const SyncPanel panel = coarse_panel(bundle, proto.coarse_grid);
        const auto lc = largest_cojump_biases(bundle, panel, proto.stride, r_h);
        if (!lc) return; // no co-jump on this path
        CojumpStudyRecord out;
        out.path_index = i;
        out.interval = lc->interval;
        out.truth = lc->truth;
        out.bias_pct = lc->bias_pct;
        slots[i] = out;
    });

    CojumpStudy study;
    for (auto& slot : slots) {
        if (slot)
            study.records.push_back(*slot);
        else
            ++study.n_excluded;
    }
    study.n_used = static_cast<int>(study.records.size());
    if (study.n_used == 0)
        throw std::runtime_error("cojump_variant_study: no path produced a co-jump");
    for (int v = 0; v < 3; ++v) {
        std::vector<double> vals;
        vals.reserve(study.records.size());
        for (const auto& r : study.records) vals.push_back(r.bias_pct[static_cast<std::size_t>(v)]);
        VariantStats& st = study.variants[static_cast<std::size_t>(v)];
        st.mean_bias_pct = mean(vals);
        st.std_bias_pct = vals.size() >= 2 ? sample_stddev(vals) : 0.0;
        st.median_bias_pct = median(vals);
        double abs_sum = 0.0;
        for (double x : vals) abs_sum += std::abs(x);
        st.mean_abs_bias_pct = abs_sum / static_cast<double>(vals.size());
    }
    return study;
}

} // namespace cojump
