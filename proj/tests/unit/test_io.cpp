#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "cojump/csv.hpp"
#include "cojump/export.hpp"
#include "cojump/simulate.hpp"

using namespace cojump;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("cojump_test_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("sampled path CSV roundtrip") {
    TempDir tmp;
    const std::string file = (tmp.path / "p.csv").string();
    const SampledPath p(TimeGrid({0.0, 0.25, 0.5, 1.0}), {0.0, 0.012, -0.008, 0.005});
    write_sampled_path_csv(p, file);
    const SampledPath q = read_sampled_path_csv(file);
    CHECK(q.values == p.values);
    CHECK(q.grid.stamps()[2] == p.grid.stamps()[2]);
}

TEST_CASE("CSV parse errors carry location") {
    TempDir tmp;
    const std::string file = (tmp.path / "bad.csv").string();

    SUBCASE("missing header") {
        std::ofstream(file) << "0.0,1.0\n0.5,2.0\n";
        CHECK_THROWS_AS(read_sampled_path_csv(file), std::runtime_error);
    }

    SUBCASE("bad number names the line") {
        std::ofstream(file) << "time,value\n0.0,1.0\n0.5,two\n";
        bool threw = false;
        try {
            read_sampled_path_csv(file);
        } catch (const std::runtime_error& e) {
            threw = true;
            CHECK(std::string(e.what()).find(":3") != std::string::npos);
        }
        CHECK(threw);
    }

    SUBCASE("grid violations are reported") {
        std::ofstream(file) << "time,value\n0.0,1.0\n0.6,2.0\n0.5,3.0\n";
        CHECK_THROWS_AS(read_sampled_path_csv(file), std::runtime_error);
    }
}

TEST_CASE("bundle CSV export") {
    TempDir tmp;
    Model1Config cfg;
    cfg.fine_step_seconds = 300.0; // small file
    const PathBundle b = build_paths(cfg, RngSeed{55, 0});
    const std::string file = (tmp.path / "bundle.csv").string();
    write_bundle_csv(b, file);
    std::ifstream in(file);
    std::string header;
    std::getline(in, header);
    CHECK(header == "time,X1,X2,D1,D2,J1,J2,sigma1,sigma2");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == b.grid->size());
}

TEST_CASE("JSON artifacts carry the schema version") {
    Model1Config cfg;
    cfg.fine_step_seconds = 300.0;
    const PathBundle b = build_paths(cfg, RngSeed{56, 0});
    const std::string truths = truths_to_json(b.truths);
    CHECK(truths.find("\"schema_version\": 1") != std::string::npos);
    CHECK(truths.find("\"cojump_sum\"") != std::string::npos);
}
