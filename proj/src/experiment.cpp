#include "qchain/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qchain/analysis.hpp"
#include "qchain/circuit.hpp"
#include "qchain/statevector.hpp"

namespace qchain {

using nlohmann::json;

void validate(const ExperimentConfig& config) {
    if (config.n_atoms < 3 || config.n_atoms > kMaxQubits) {
        throw std::invalid_argument("n_atoms must lie in [3, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(config.n_atoms));
    }
    if (config.layers < 0) {
        throw std::invalid_argument("layers must be nonnegative");
    }
    if (config.epochs < 0) {
        throw std::invalid_argument("epochs must be nonnegative");
    }
    if (config.seed_count < 1) {
        throw std::invalid_argument("seed count must be at least 1");
    }
    if (!(config.learning_rate > 0.0)) {
        throw std::invalid_argument("learning rate must be positive");
    }
    if (config.coupling == 0.0) {
        throw std::invalid_argument("coupling must be nonzero");
    }
    if (config.top_k < 1) {
        throw std::invalid_argument("top-k must be at least 1");
    }
    if (config.threads < 0) {
        throw std::invalid_argument("threads must be nonnegative");
    }
}

namespace {

int effective_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

json trace_json(const TrainingTrace& trace) {
    json energies = json::array();
    for (const TraceRecord& r : trace.records) {
        energies.push_back({{"epoch", r.epoch}, {"energy", r.energy}});
    }
    return json{{"seed", trace.seed},
                {"energies", energies},
                {"final_gammas", trace.final_gammas},
                {"final_betas", trace.final_betas}};
}

// Independent trainings; the smallest final energy wins, ties to the lowest
// seed. Worker count does not affect the outcome.
TrainingTrace train_best_of(const ExperimentConfig& config, const ChainSpec& chain) {
    AdamConfig adam;
    adam.learning_rate = config.learning_rate;
    adam.epochs = config.epochs;

    auto train_one = [&](std::uint64_t seed) {
        return config.per_edge ? train_per_edge(chain, config.layers, adam, seed)
                               : train(chain, config.layers, adam, seed);
    };

    std::vector<TrainingTrace> traces(static_cast<std::size_t>(config.seed_count));
    const int workers = std::min(effective_threads(config.threads), config.seed_count);
    if (workers <= 1) {
        for (int i = 0; i < config.seed_count; ++i) {
            traces[static_cast<std::size_t>(i)] = train_one(config.seed + static_cast<std::uint64_t>(i));
        }
    } else {
        std::atomic<int> next{0};
        auto work = [&]() {
            for (int i = next.fetch_add(1); i < config.seed_count; i = next.fetch_add(1)) {
                traces[static_cast<std::size_t>(i)] =
                    train_one(config.seed + static_cast<std::uint64_t>(i));
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back(work);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < traces.size(); ++i) {
        if (traces[i].final_energy() < traces[best].final_energy()) {
            best = i;
        }
    }
    return std::move(traces[best]);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out.good()) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

} // namespace

RunResult run_experiment(const ExperimentConfig& config) {
    validate(config);
    const ChainSpec chain{config.n_atoms, config.coupling, Boundary::Periodic};
    const int threads = effective_threads(config.threads);

    const TrainingTrace best = train_best_of(config, chain);

    // Trained distribution, exact.
    StateVector state;
    if (config.per_edge) {
        PerEdgeParameters params{best.final_gammas, best.final_betas};
        state = run_qaoa(chain, params);
    } else {
        QaoaParameters params{best.final_gammas, best.final_betas};
        state = run_qaoa(chain, params);
    }
    const std::vector<double> probs = probabilities(state);

    const EnergyTable table = energy_table(chain);
    const GroundStates ground = ground_states(table);
    const double gs_probability = ground_state_probability(probs, ground);
    const double baseline = uniform_baseline(config.n_atoms);

    const std::vector<std::uint64_t> counts = sample(probs, config.samples, config.seed, threads);
    const ConfigurationHistogram hist = histogram(counts, config.n_atoms);

    json summary{
        {"n_atoms", config.n_atoms},
        {"layers", config.layers},
        {"epochs", config.epochs},
        {"samples", config.samples},
        {"seed", config.seed},
        {"seed_count", config.seed_count},
        {"best_seed", best.seed},
        {"coupling", config.coupling},
        {"ground_state_probability", gs_probability},
        {"uniform_baseline", baseline},
        {"enhancement_ratio", gs_probability / baseline},
        {"final_energy", best.final_energy()},
        {"initial_energy", best.initial_energy()},
        {"min_energy", ground.energy},
    };
    if (config.report_unit) {
        summary["report_unit"] = *config.report_unit;
        summary["final_energy_physical"] = best.final_energy() * *config.report_unit;
        summary["min_energy_physical"] = ground.energy * *config.report_unit;
    }

    RunResult result;
    result.trace_path = config.output_dir / "trace.json";
    result.histogram_path = config.output_dir / "histogram.csv";
    result.summary_path = config.output_dir / "summary.json";
    result.best_seed = best.seed;
    result.final_energy = best.final_energy();
    result.ground_state_probability = gs_probability;
    result.enhancement_ratio = gs_probability / baseline;

    std::vector<std::filesystem::path> written;
    try {
        std::filesystem::create_directories(config.output_dir);
        write_text(result.trace_path, trace_json(best).dump(2) + "\n");
        written.push_back(result.trace_path);
        write_text(result.histogram_path, histogram_csv(hist, config.top_k));
        written.push_back(result.histogram_path);
        write_text(result.summary_path, summary.dump(2) + "\n");
        written.push_back(result.summary_path);
    } catch (...) {
        for (const auto& path : written) {
            std::error_code ec;
            std::filesystem::remove(path, ec);
        }
        throw;
    }
    return result;
}

std::string oracle_report(int n_atoms, double coupling) {
    const ChainSpec chain{n_atoms, coupling, Boundary::Periodic};
    const GroundStates ground = ground_states(chain);

    std::string out;
    out += "n_atoms: " + std::to_string(n_atoms) + "\n";
    char value[64];
    std::snprintf(value, sizeof(value), "%.17g", coupling);
    out += "coupling: " + std::string(value) + "\n";
    std::snprintf(value, sizeof(value), "%.17g", ground.energy);
    out += "min_energy: " + std::string(value) + "\n";
    out += "ground_state_count: " + std::to_string(ground.configs.size()) + "\n";
    out += "ground_states:";
    constexpr std::size_t kMaxListed = 64;
    for (std::size_t i = 0; i < ground.configs.size() && i < kMaxListed; ++i) {
        out += " " + format_bits(ground.configs[i], n_atoms);
    }
    if (ground.configs.size() > kMaxListed) {
        out += " ... (" + std::to_string(ground.configs.size() - kMaxListed) + " more)";
    }
    out += "\n";
    // baseline as an exact rational: 2/2^n reduced
    out += "uniform_baseline: 1/" + std::to_string(std::uint64_t{1} << (n_atoms - 1));
    std::snprintf(value, sizeof(value), "%.17g", uniform_baseline(n_atoms));
    out += " (" + std::string(value) + ")\n";
    return out;
}

std::string energy_table_csv(const ChainSpec& chain) {
    const EnergyTable table = energy_table(chain);
    std::string out = "index,energy\n";
    char value[64];
    for (std::uint64_t z = 0; z < table.size(); ++z) {
        std::snprintf(value, sizeof(value), "%.17g", table.values[z]);
        out += std::to_string(z) + "," + value + "\n";
    }
    return out;
}

void export_qasm_file(const ChainSpec& chain, const std::filesystem::path& params_path,
                      const std::filesystem::path& output_path) {
    std::ifstream in(params_path);
    if (!in) {
        throw std::invalid_argument("cannot open parameter file " + params_path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed parameter file: " + std::string(e.what()));
    }
    if (!doc.contains("gammas") || !doc.contains("betas") || !doc["gammas"].is_array() ||
        !doc["betas"].is_array()) {
        throw std::invalid_argument("parameter file needs \"gammas\" and \"betas\" arrays");
    }
    QaoaParameters params;
    try {
        params.gammas = doc["gammas"].get<std::vector<double>>();
        params.betas = doc["betas"].get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw std::invalid_argument("parameter file entries must be numbers: " +
                                    std::string(e.what()));
    }
    if (params.gammas.size() != params.betas.size()) {
        throw std::invalid_argument("parameter file: gammas and betas lengths differ");
    }
    write_text(output_path, export_qasm(build_qaoa_circuit(chain, params)));
}

} // namespace qchain
