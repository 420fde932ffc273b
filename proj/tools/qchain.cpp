#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qchain/experiment.hpp"
#include "qchain/ising.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitResourceCap = 2;

std::filesystem::path default_output_dir() {
    if (const char* env = std::getenv("QCHAIN_OUTPUT_DIR")) {
        return env;
    }
    return ".";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QAOA ground-state search for ferromagnetic spin rings"};
    app.require_subcommand(1);

    qchain::ExperimentConfig config;
    config.output_dir = default_output_dir();
    double report_unit = 0.0;

    auto* run = app.add_subcommand("run", "Train the circuit, sample it, and write reports");
    run->add_option("--atoms", config.n_atoms, "Ring length")->capture_default_str();
    run->add_option("--layers", config.layers, "Circuit depth p (2p trainable angles)")
        ->capture_default_str();
    run->add_option("--epochs", config.epochs, "Adam epochs")->capture_default_str();
    run->add_option("--samples", config.samples, "Configurations to sample after training")
        ->capture_default_str();
    run->add_option("--seed", config.seed, "Base random seed")->capture_default_str();
    run->add_option("--seeds", config.seed_count,
                    "Independent trainings; the best final energy is reported")
        ->capture_default_str();
    run->add_option("--learning-rate", config.learning_rate, "Adam learning rate")
        ->capture_default_str();
    run->add_option("--coupling", config.coupling, "Exchange coupling J (J > 0 ferromagnetic)")
        ->capture_default_str();
    run->add_option("--report-unit", report_unit,
                    "Physical energy per unit J, for reporting only (e.g. 1.5 for peV)");
    run->add_option("--out-dir", config.output_dir,
                    "Output directory (env QCHAIN_OUTPUT_DIR overrides the default)")
        ->capture_default_str();
    run->add_option("--top-k", config.top_k, "Histogram classes to report")
        ->capture_default_str();
    run->add_flag("--per-edge", config.per_edge,
                  "Train one cost angle per bond per layer instead of a shared angle");
    run->add_option("--threads", config.threads, "Worker threads (0 = auto); outputs unaffected")
        ->capture_default_str();

    int oracle_atoms = 12;
    double oracle_coupling = 1.0;
    auto* oracle = app.add_subcommand("oracle", "Exact brute-force ground states and baseline");
    oracle->add_option("--atoms", oracle_atoms, "Ring length")->capture_default_str();
    oracle->add_option("--coupling", oracle_coupling, "Exchange coupling J")
        ->capture_default_str();

    int qasm_atoms = 12;
    double qasm_coupling = 1.0;
    std::string qasm_params;
    std::string qasm_out = "circuit.qasm";
    auto* qasm = app.add_subcommand("export-qasm", "Emit the circuit as OpenQASM 2.0");
    qasm->add_option("--atoms", qasm_atoms, "Ring length")->capture_default_str();
    qasm->add_option("--coupling", qasm_coupling, "Exchange coupling J")->capture_default_str();
    qasm->add_option("--params", qasm_params, "JSON file with \"gammas\" and \"betas\" arrays")
        ->required();
    qasm->add_option("--out", qasm_out, "Output path")->capture_default_str();

    int table_atoms = 12;
    double table_coupling = 1.0;
    std::string table_out;
    auto* table = app.add_subcommand("energy-table", "Dump the diagonal energy table as CSV");
    table->add_option("--atoms", table_atoms, "Ring length")->capture_default_str();
    table->add_option("--coupling", table_coupling, "Exchange coupling J")
        ->capture_default_str();
    table->add_option("--out", table_out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            if (run->count("--report-unit") > 0) {
                config.report_unit = report_unit;
            }
            const qchain::RunResult result = qchain::run_experiment(config);
            std::cout << "best_seed: " << result.best_seed << "\n"
                      << "final_energy: " << result.final_energy << "\n"
                      << "ground_state_probability: " << result.ground_state_probability << "\n"
                      << "enhancement_ratio: " << result.enhancement_ratio << "\n"
                      << "wrote: " << result.trace_path.string() << ", "
                      << result.histogram_path.string() << ", " << result.summary_path.string()
                      << "\n";
        } else if (oracle->parsed()) {
            std::cout << qchain::oracle_report(oracle_atoms, oracle_coupling);
        } else if (qasm->parsed()) {
            const qchain::ChainSpec chain{qasm_atoms, qasm_coupling, qchain::Boundary::Periodic};
            qchain::export_qasm_file(chain, qasm_params, qasm_out);
            std::cout << "wrote: " << qasm_out << "\n";
        } else if (table->parsed()) {
            const qchain::ChainSpec chain{table_atoms, table_coupling,
                                          qchain::Boundary::Periodic};
            const std::string csv = qchain::energy_table_csv(chain);
            if (table_out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(table_out, std::ios::binary);
                if (!out) {
                    std::cerr << "error: cannot open " << table_out << " for writing\n";
                    return kExitUsage;
                }
                out << csv;
            }
        }
    } catch (const qchain::ResourceCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
