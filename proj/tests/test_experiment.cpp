#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qchain/experiment.hpp"

using namespace qchain;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qchain_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("experiment config validation") {
    ExperimentConfig config;
    config.n_atoms = 2;
    CHECK_THROWS_AS(validate(config), std::invalid_argument);
    config.n_atoms = 27;
    CHECK_THROWS_AS(validate(config), std::invalid_argument);
    config = {};
    config.seed_count = 0;
    CHECK_THROWS_AS(validate(config), std::invalid_argument);
    config = {};
    config.learning_rate = -0.1;
    CHECK_THROWS_AS(validate(config), std::invalid_argument);
    config = {};
    CHECK_NOTHROW(validate(config));
}

TEST_CASE("depth-0 run reproduces the uniform baseline") {
    ExperimentConfig config;
    config.n_atoms = 10;
    config.layers = 0;
    config.epochs = 0;
    config.samples = 0;
    config.output_dir = fresh_dir("uniform");

    const RunResult result = run_experiment(config);

    const auto trace = nlohmann::json::parse(slurp(result.trace_path));
    REQUIRE(trace["energies"].size() == 1);
    CHECK(trace["energies"][0]["epoch"] == 0);
    CHECK(trace["final_gammas"].empty());

    CHECK(slurp(result.histogram_path) == "representative_bits,count,fraction\n");

    const auto summary = nlohmann::json::parse(slurp(result.summary_path));
    const double baseline = summary["uniform_baseline"];
    CHECK(baseline == 1.0 / 512.0);
    CHECK(std::abs(double(summary["ground_state_probability"]) - baseline) < 1e-12);
    CHECK(summary["min_energy"] == -10.0);
    CHECK(std::abs(double(summary["final_energy"])) < 1e-12);
}

TEST_CASE("runs are byte-identical across repeats and worker counts") {
    ExperimentConfig config;
    config.n_atoms = 6;
    config.layers = 2;
    config.epochs = 5;
    config.samples = 200'000;
    config.seed = 42;
    config.seed_count = 2;

    config.output_dir = fresh_dir("det_a");
    config.threads = 1;
    run_experiment(config);
    const fs::path dir_a = config.output_dir;

    config.output_dir = fresh_dir("det_b");
    config.threads = 2;
    run_experiment(config);
    const fs::path dir_b = config.output_dir;

    for (const char* name : {"trace.json", "histogram.csv", "summary.json"}) {
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }
}

TEST_CASE("trained run improves on the baseline") {
    ExperimentConfig config;
    config.n_atoms = 8;
    config.layers = 10;
    config.epochs = 30;
    config.samples = 50'000;
    config.seed = 1;
    config.output_dir = fresh_dir("trained");

    const RunResult result = run_experiment(config);
    CHECK(result.enhancement_ratio > 1.0);

    const auto summary = nlohmann::json::parse(slurp(result.summary_path));
    const double probability = summary["ground_state_probability"];
    CHECK(probability >= 0.0);
    CHECK(probability <= 1.0);
    CHECK(summary["min_energy"] == -8.0);
    const double final_energy = summary["final_energy"];
    CHECK(final_energy >= -8.0);
    CHECK(final_energy <= 8.0);

    // histogram is dominated by the all-aligned class after a good run
    const std::string csv = slurp(result.histogram_path);
    const std::size_t first_row = csv.find('\n') + 1;
    CHECK(csv.substr(first_row, 9) == "00000000,");
}

TEST_CASE("failed runs leave no partial files") {
    ExperimentConfig config;
    config.n_atoms = 4;
    config.layers = 1;
    config.epochs = 1;
    config.samples = 100;
    config.output_dir = fresh_dir("partial");
    // a directory squatting on the csv path makes the second write fail
    fs::create_directories(config.output_dir / "histogram.csv");

    CHECK_THROWS(run_experiment(config));
    CHECK(!fs::exists(config.output_dir / "trace.json"));
    CHECK(!fs::exists(config.output_dir / "summary.json"));
}

TEST_CASE("report unit scales the summary energies") {
    ExperimentConfig config;
    config.n_atoms = 6;
    config.layers = 1;
    config.epochs = 2;
    config.samples = 0;
    config.report_unit = 1.5;
    config.output_dir = fresh_dir("unit");

    const RunResult result = run_experiment(config);
    const auto summary = nlohmann::json::parse(slurp(result.summary_path));
    CHECK(summary["report_unit"] == 1.5);
    CHECK(double(summary["min_energy_physical"]) == doctest::Approx(-9.0));
    CHECK(double(summary["final_energy_physical"]) ==
          doctest::Approx(1.5 * double(summary["final_energy"])));
}

TEST_CASE("oracle report") {
    const std::string report = oracle_report(12, 1.0);
    CHECK(report.find("min_energy: -12") != std::string::npos);
    CHECK(report.find("000000000000 111111111111") != std::string::npos);
    CHECK(report.find("uniform_baseline: 1/2048") != std::string::npos);

    const std::string anti = oracle_report(4, -1.0);
    CHECK(anti.find("min_energy: -4") != std::string::npos);
    CHECK(anti.find("ground_state_count: 2") != std::string::npos);

    CHECK_THROWS_AS(oracle_report(25, 1.0), ResourceCapError);
}

TEST_CASE("energy table csv") {
    CHECK(energy_table_csv(ChainSpec{3, 1.0, Boundary::Periodic}) ==
          "index,energy\n0,-3\n1,1\n2,1\n3,1\n4,1\n5,1\n6,1\n7,-3\n");
}

TEST_CASE("qasm export from a parameter file") {
    const fs::path dir = fresh_dir("qasm");
    const ChainSpec chain{3, 1.0, Boundary::Periodic};

    SUBCASE("valid parameters") {
        std::ofstream(dir / "params.json") << R"({"gammas": [0.3], "betas": [0.7]})";
        export_qasm_file(chain, dir / "params.json", dir / "circuit.qasm");
        const std::string text = slurp(dir / "circuit.qasm");
        CHECK(text.find("OPENQASM 2.0;") == 0);
        std::size_t statements = 0;
        for (std::size_t pos = 0; (pos = text.find(";\n", pos)) != std::string::npos; ++pos) {
            ++statements;
        }
        CHECK(statements == 15 + 3); // 15 gates + header/include/qreg
    }
    SUBCASE("depth zero emits only the Hadamards") {
        std::ofstream(dir / "p0.json") << R"({"gammas": [], "betas": []})";
        export_qasm_file(chain, dir / "p0.json", dir / "c0.qasm");
        const std::string text = slurp(dir / "c0.qasm");
        CHECK(text.find("h q[0];\nh q[1];\nh q[2];\n") != std::string::npos);
    }
    SUBCASE("mismatched arrays rejected") {
        std::ofstream(dir / "bad.json") << R"({"gammas": [0.3, 0.1], "betas": [0.7]})";
        CHECK_THROWS_AS(export_qasm_file(chain, dir / "bad.json", dir / "bad.qasm"),
                        std::invalid_argument);
    }
    SUBCASE("malformed file rejected") {
        std::ofstream(dir / "broken.json") << "{ not json";
        CHECK_THROWS_AS(export_qasm_file(chain, dir / "broken.json", dir / "broken.qasm"),
                        std::invalid_argument);
        CHECK_THROWS_AS(export_qasm_file(chain, dir / "missing.json", dir / "x.qasm"),
                        std::invalid_argument);
    }
}
