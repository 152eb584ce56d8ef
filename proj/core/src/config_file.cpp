#include "cojump/config_file.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cojump {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

class ConfigReader {
public:
    ConfigReader(const ConfigSections& sections, std::string origin)
        : sections_(sections), origin_(std::move(origin)) {}

    double number(const std::string& section, const std::string& key, double fallback) {
        const std::string* raw = find(section, key);
        if (raw == nullptr) return fallback;
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(raw->c_str(), &end);
        if (end != raw->c_str() + raw->size() || errno == ERANGE)
            throw std::runtime_error(origin_ + ": bad number for " + section + "." + key +
                                     ": '" + *raw + "'");
        return v;
    }

    std::string text(const std::string& section, const std::string& key) {
        const std::string* raw = find(section, key);
        if (raw == nullptr)
            throw std::runtime_error(origin_ + ": missing " + section + "." + key);
        return *raw;
    }

    void check_consumed() const {
        for (const auto& [section, kv] : sections_)
            for (const auto& [key, value] : kv)
                if (!consumed_.count(section + "." + key))
                    throw std::runtime_error(origin_ + ": unknown key " + section + "." + key);
    }

private:
    const std::string* find(const std::string& section, const std::string& key) {
        auto sit = sections_.find(section);
        if (sit == sections_.end()) return nullptr;
        auto kit = sit->second.find(key);
        if (kit == sit->second.end()) return nullptr;
        consumed_.insert(section + "." + key);
        return &kit->second;
    }

    const ConfigSections& sections_;
    std::string origin_;
    std::set<std::string> consumed_;
};

} // namespace

ConfigSections parse_config_text(const std::string& text, const std::string& origin) {
    ConfigSections out;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                         ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                         ": empty section name");
            out[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": key outside any [section]");
        if (!out[section].emplace(key, value).second)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": duplicate key " +
                                     section + "." + key);
    }
    return out;
}

ModelConfig model_from_config_text(const std::string& text, const std::string& origin) {
    const ConfigSections sections = parse_config_text(text, origin);
    ConfigReader r(sections, origin);
    const std::string type = r.text("model", "type");

    ModelConfig out;
    if (type == "model1") {
        Model1Config cfg;
        cfg.horizon_days = r.number("model", "horizon_days", cfg.horizon_days);
        cfg.fine_step_seconds = r.number("model", "fine_step_seconds", cfg.fine_step_seconds);
        cfg.drift1 = r.number("diffusion", "drift1", cfg.drift1);
        cfg.drift2 = r.number("diffusion", "drift2", cfg.drift2);
        cfg.rho = r.number("diffusion", "rho", cfg.rho);
        cfg.sv1.logvol_mean = r.number("volatility1", "logvol_mean", cfg.sv1.logvol_mean);
        cfg.sv1.mean_reversion = r.number("volatility1", "mean_reversion", cfg.sv1.mean_reversion);
        cfg.sv1.vol_of_vol = r.number("volatility1", "vol_of_vol", cfg.sv1.vol_of_vol);
        cfg.sv2.logvol_mean = r.number("volatility2", "logvol_mean", cfg.sv2.logvol_mean);
        cfg.sv2.mean_reversion = r.number("volatility2", "mean_reversion", cfg.sv2.mean_reversion);
        cfg.sv2.vol_of_vol = r.number("volatility2", "vol_of_vol", cfg.sv2.vol_of_vol);
        cfg.lambda1 = r.number("jumps", "lambda1", cfg.lambda1);
        cfg.lambda3 = r.number("jumps", "lambda3", cfg.lambda3);
        cfg.jump_size.mean = r.number("jumps", "size_mean", cfg.jump_size.mean);
        cfg.jump_size.stddev = r.number("jumps", "size_std", cfg.jump_size.stddev);
        cfg.rho_j = r.number("jumps", "rho_j", cfg.rho_j);
        out = cfg;
    } else if (type == "model2") {
        Model2Config cfg;
        cfg.horizon_days = r.number("model", "horizon_days", cfg.horizon_days);
        cfg.fine_step_seconds = r.number("model", "fine_step_seconds", cfg.fine_step_seconds);
        cfg.sigma1 = r.number("diffusion", "sigma1", cfg.sigma1);
        cfg.sigma2 = r.number("diffusion", "sigma2", cfg.sigma2);
        cfg.rho = r.number("diffusion", "rho", cfg.rho);
        cfg.vg1.kappa = r.number("vg1", "kappa", cfg.vg1.kappa);
        cfg.vg1.theta = r.number("vg1", "theta", cfg.vg1.theta);
        cfg.vg1.varsigma = r.number("vg1", "varsigma", cfg.vg1.varsigma);
        cfg.vg3.kappa = r.number("vg3", "kappa", cfg.vg3.kappa);
        cfg.vg3.theta = r.number("vg3", "theta", cfg.vg3.theta);
        cfg.vg3.varsigma = r.number("vg3", "varsigma", cfg.vg3.varsigma);
        cfg.rho_j = r.number("jumps", "rho_j", cfg.rho_j);
        out = cfg;
    } else {
        throw std::runtime_error(origin + ": model.type must be 'model1' or 'model2', got '" +
                                 type + "'");
    }
    r.check_consumed();
    try {
        validate(out);
    } catch (const std::invalid_argument& e) {
        // keep the exception type: syntax problems are runtime_error, bad
        // field values stay invalid_argument (distinct CLI exit codes)
        throw std::invalid_argument(origin + ": " + e.what());
    }
    return out;
}

ModelConfig model_from_config_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::runtime_error("cannot open " + filename);
    std::stringstream buf;
    buf << in.rdbuf();
    return model_from_config_text(buf.str(), filename);
}

std::string default_model1_config_text() {
    Model1Config d;
    std::ostringstream out;
    out.precision(17);
    out << "# Stochastic-volatility diffusion with compound Poisson jumps.\n"
        << "# Parameters are working defaults, not estimates from any data set.\n"
        << "[model]\n"
        << "type = model1\n"
        << "horizon_days = " << d.horizon_days << "\n"
        << "fine_step_seconds = " << d.fine_step_seconds << "\n\n"
        << "[diffusion]\n"
        << "drift1 = " << d.drift1 << "\n"
        << "drift2 = " << d.drift2 << "\n"
        << "rho = " << d.rho << "\n\n"
        << "[volatility1]\n"
        << "logvol_mean = " << d.sv1.logvol_mean << "\n"
        << "mean_reversion = " << d.sv1.mean_reversion << "\n"
        << "vol_of_vol = " << d.sv1.vol_of_vol << "\n\n"
        << "[volatility2]\n"
        << "logvol_mean = " << d.sv2.logvol_mean << "\n"
        << "mean_reversion = " << d.sv2.mean_reversion << "\n"
        << "vol_of_vol = " << d.sv2.vol_of_vol << "\n\n"
        << "[jumps]\n"
        << "lambda1 = " << d.lambda1 << "\n"
        << "lambda3 = " << d.lambda3 << "\n"
        << "size_mean = " << d.jump_size.mean << "\n"
        << "size_std = " << d.jump_size.stddev << "\n"
        << "rho_j = " << d.rho_j << "\n";
    return out.str();
}

std::string default_model2_config_text() {
    Model2Config d;
    std::ostringstream out;
    out.precision(17);
    out << "# Constant-volatility diffusion with Variance Gamma jumps.\n"
        << "# Parameters are working defaults, not estimates from any data set.\n"
        << "[model]\n"
        << "type = model2\n"
        << "horizon_days = " << d.horizon_days << "\n"
        << "fine_step_seconds = " << d.fine_step_seconds << "\n\n"
        << "[diffusion]\n"
        << "sigma1 = " << d.sigma1 << "\n"
        << "sigma2 = " << d.sigma2 << "\n"
        << "rho = " << d.rho << "\n\n"
        << "[vg1]\n"
        << "kappa = " << d.vg1.kappa << "\n"
        << "theta = " << d.vg1.theta << "\n"
        << "varsigma = " << d.vg1.varsigma << "\n\n"
        << "[vg3]\n"
        << "kappa = " << d.vg3.kappa << "\n"
        << "theta = " << d.vg3.theta << "\n"
        << "varsigma = " << d.vg3.varsigma << "\n\n"
        << "[jumps]\n"
        << "rho_j = " << d.rho_j << "\n";
    return out.str();
}

} // namespace cojump
