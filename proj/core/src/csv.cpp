#include "cojump/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cojump {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& field, const std::string& file, std::size_t line) {
    const std::string t = trim(field);
    if (t.empty())
        throw std::runtime_error(file + ":" + std::to_string(line) + ": empty field");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE)
        throw std::runtime_error(file + ":" + std::to_string(line) + ": bad number '" + t + "'");
    return v;
}

} // namespace

SampledPath read_sampled_path_csv(const std::string& filename) {
    std::ifstream in(filename);
    if (!in)
        throw std::runtime_error("cannot open " + filename);
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line))
        throw std::runtime_error(filename + ": empty file");
    ++lineno;
    // tolerate a UTF-8 BOM on the header
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    {
        std::string header = trim(line);
        for (auto& ch : header) ch = static_cast<char>(std::tolower(ch));
        if (header != "time,value")
            throw std::runtime_error(filename + ": expected header 'time,value', got '" +
                                     trim(line) + "'");
    }

    std::vector<double> times, values;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(filename + ":" + std::to_string(lineno) +
                                     ": expected 'time,value'");
        times.push_back(parse_double(line.substr(0, comma), filename, lineno));
        values.push_back(parse_double(line.substr(comma + 1), filename, lineno));
    }
    try {
        return SampledPath(TimeGrid(std::move(times)), std::move(values));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(filename + ": " + e.what());
    }
}

void write_sampled_path_csv(const SampledPath& path, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("cannot write " + filename);
    out << "time,value\n";
    char buf[80];
    for (std::size_t i = 0; i < path.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", path.grid[i], path.values[i]);
        out << buf;
    }
}

void write_bundle_csv(const PathBundle& b, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("cannot write " + filename);
    out << "time,X1,X2,D1,D2,J1,J2,sigma1,sigma2\n";
    char buf[256];
    const TimeGrid& g = *b.grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", g[i], b.x1[i],
                      b.x2[i], b.d1[i], b.d2[i], b.j1[i], b.j2[i], b.sigma1[i], b.sigma2[i]);
        out << buf;
    }
}

} // namespace cojump
