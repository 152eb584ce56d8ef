#include "cojump/export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace cojump {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json opt(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

} // namespace

std::string estimates_to_json(const CovariationEstimates& est) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["ic_hat"] = est.ic_hat;
    j["iv1_hat"] = est.iv1_hat;
    j["iv2_hat"] = est.iv2_hat;
    j["qcov"] = est.qcov;
    j["cojump_sum"] = est.cojump_sum;
    j["beta12_hat"] = opt(est.beta12_hat);
    j["beta21_hat"] = opt(est.beta21_hat);
    j["rho_hat"] = opt(est.rho_hat);
    j["avar_hat"] = est.avar_hat;
    j["avar_clamped"] = est.avar_clamped;
    j["r_h"] = est.r_h;
    j["h"] = est.h;
    j["n_used"] = est.n_used;
    return j.dump(2) + "\n";
}

std::string truths_to_json(const PathTruths& truths) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["ic"] = truths.ic;
    j["iv1"] = truths.iv1;
    j["iv2"] = truths.iv2;
    j["cojump_sum"] = truths.cojump_sum;
    j["infinite_activity"] = truths.infinite_activity;
    j["jump_times1"] = truths.jump_times1;
    j["jump_times2"] = truths.jump_times2;
    return j.dump(2) + "\n";
}

std::string summary_to_json(const BiasSummary& s) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["master_seed"] = s.master_seed;
    j["n_paths"] = s.n_paths;
    j["n_failed"] = s.n_failed;
    j["absolute_bias"] = s.absolute_bias;
    j["mean_bias_pct"] = s.mean_bias_pct;
    j["median_bias_pct"] = s.median_bias_pct;
    j["std_bias_pct"] = s.std_bias_pct;
    j["mean_qcov_bias_pct"] = s.mean_qcov_bias_pct;
    j["nb_mean"] = opt(s.nb_mean);
    j["nb_std"] = opt(s.nb_std);
    j["cojump_mean_bias_pct"] = opt(s.cojump_mean_bias_pct);
    j["cojump_std_bias_pct"] = opt(s.cojump_std_bias_pct);
    j["cojump_defined"] = s.cojump_defined;
    j["variant5_mean_bias_pct"] = opt(s.variant_mean_bias_pct[0]);
    j["variant6_mean_bias_pct"] = opt(s.variant_mean_bias_pct[1]);
    j["variant7_mean_bias_pct"] = opt(s.variant_mean_bias_pct[2]);
    j["variant_defined"] = s.variant_defined;
    j["mean_truncated_fraction"] = s.mean_truncated_fraction;
    j["clamp_count"] = s.clamp_count;
    ordered_json qq = ordered_json::array();
    for (const auto& [nq, eq] : s.nb_qq) qq.push_back({{"normal", nq}, {"empirical", eq}});
    j["nb_qq"] = std::move(qq);
    return j.dump(2) + "\n";
}

std::string cojump_study_to_json(const CojumpStudy& study) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["n_used"] = study.n_used;
    j["n_excluded"] = study.n_excluded;
    const char* names[3] = {"variant5", "variant6", "variant7"};
    for (int v = 0; v < 3; ++v) {
        const VariantStats& st = study.variants[static_cast<std::size_t>(v)];
        ordered_json e;
        e["mean_bias_pct"] = st.mean_bias_pct;
        e["std_bias_pct"] = st.std_bias_pct;
        e["median_bias_pct"] = st.median_bias_pct;
        e["mean_abs_bias_pct"] = st.mean_abs_bias_pct;
        j[names[v]] = std::move(e);
    }
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& text, const std::string& filename) {
    std::ofstream out(filename, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + filename);
    out << text;
}

namespace {

void put(std::ofstream& out, const std::optional<double>& v) {
    char buf[40];
    if (v) {
        std::snprintf(buf, sizeof buf, "%.17g", *v);
        out << buf;
    }
}

void put(std::ofstream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

} // namespace

void write_per_path_csv(const BiasSummary& s, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("cannot write " + filename);
    out << "path_index,ic_true,ic_hat,iv1_hat,iv2_hat,qcov,cojump_true,cojump_hat,"
           "bias_pct,qcov_bias_pct,nb,cojump_bias_pct,variant5_bias_pct,variant6_bias_pct,"
           "variant7_bias_pct,rho_hat,truncated_fraction,avar_clamped\n";
    for (const auto& r : s.records) {
        out << r.path_index << ',';
        put(out, r.ic_true); out << ',';
        put(out, r.ic_hat); out << ',';
        put(out, r.iv1_hat); out << ',';
        put(out, r.iv2_hat); out << ',';
        put(out, r.qcov); out << ',';
        put(out, r.cojump_true); out << ',';
        put(out, r.cojump_hat); out << ',';
        put(out, r.bias_pct); out << ',';
        put(out, r.qcov_bias_pct); out << ',';
        put(out, r.nb); out << ',';
        put(out, r.cojump_bias_pct); out << ',';
        for (int v = 0; v < 3; ++v) {
            if (r.variant_bias_pct) put(out, (*r.variant_bias_pct)[static_cast<std::size_t>(v)]);
            out << ',';
        }
        put(out, r.rho_hat); out << ',';
        put(out, r.truncated_fraction); out << ',';
        out << (r.avar_clamped ? 1 : 0) << '\n';
    }
}

void write_qq_csv(const BiasSummary& s, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("cannot write " + filename);
    out << "normal_quantile,empirical_quantile\n";
    for (const auto& [nq, eq] : s.nb_qq) {
        put(out, nq); out << ',';
        put(out, eq); out << '\n';
    }
}

void write_sweep_csv(const SweepResult& sweep, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("cannot write " + filename);
    out << "c,beta," << (sweep.absolute_bias ? "mean_abs_bias" : "mean_bias_pct") << "\n";
    for (std::size_t ci = 0; ci < sweep.c_values.size(); ++ci) {
        for (std::size_t bi = 0; bi < sweep.beta_values.size(); ++bi) {
            put(out, sweep.c_values[ci]); out << ',';
            put(out, sweep.beta_values[bi]); out << ',';
            put(out, sweep.mean_bias[ci][bi]); out << '\n';
        }
    }
}

void write_cojump_study_csv(const CojumpStudy& study, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("cannot write " + filename);
    out << "path_index,interval,truth,bias5_pct,bias6_pct,bias7_pct\n";
    for (const auto& r : study.records) {
        out << r.path_index << ',' << r.interval << ',';
        put(out, r.truth); out << ',';
        put(out, r.bias_pct[0]); out << ',';
        put(out, r.bias_pct[1]); out << ',';
        put(out, r.bias_pct[2]); out << '\n';
    }
}

} // namespace cojump
