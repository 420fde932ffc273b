#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qchain/ising.hpp"
#include "qchain/optimizer.hpp"

namespace qchain {

/// One end-to-end experiment: train, sample the trained distribution, report.
/// Defaults reproduce the 12-atom protocol; `qchain run --atoms 20` is the
/// 20-atom variant.
struct ExperimentConfig {
    int n_atoms = 12;
    int layers = 10;
    int epochs = 125;
    std::uint64_t samples = 50'000'000;
    std::uint64_t seed = 1;
    int seed_count = 1; // independent trainings; best final energy wins
    double learning_rate = 0.01;
    double coupling = 1.0;
    std::optional<double> report_unit; // physical energy per unit J, report-only
    std::filesystem::path output_dir = ".";
    std::size_t top_k = 10;
    bool per_edge = false;
    int threads = 0; // 0 = hardware concurrency
};

/// Throws std::invalid_argument on out-of-range settings (usage errors).
void validate(const ExperimentConfig& config);

struct RunResult {
    std::filesystem::path trace_path;
    std::filesystem::path histogram_path;
    std::filesystem::path summary_path;
    std::uint64_t best_seed = 0;
    double final_energy = 0.0;
    double ground_state_probability = 0.0;
    double enhancement_ratio = 0.0;
};

/// Trains (seed_count seeds, best-of), samples, and writes trace.json,
/// histogram.csv, and summary.json into output_dir. Any file already written
/// is removed if a later step fails.
RunResult run_experiment(const ExperimentConfig& config);

/// Text report: exact minimum energy, the degenerate ground set, and the
/// blind-search baseline.
std::string oracle_report(int n_atoms, double coupling);

/// CSV dump `index,energy`, index ascending.
std::string energy_table_csv(const ChainSpec& chain);

/// Reads {"gammas": [...], "betas": [...]} and writes the OpenQASM text of
/// the corresponding circuit. Throws std::invalid_argument on malformed or
/// mismatched parameter files.
void export_qasm_file(const ChainSpec& chain, const std::filesystem::path& params_path,
                      const std::filesystem::path& output_path);

} // namespace qchain
