#include "qchain/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qchain {

SpinConfiguration canonical_class(SpinConfiguration config, int n_atoms) {
    return std::min(config, flip_config(config, n_atoms));
}

ConfigurationHistogram histogram(std::span<const std::uint64_t> counts, int n_atoms) {
    if (n_atoms < 1 || counts.size() != (std::size_t{1} << n_atoms)) {
        throw std::invalid_argument("histogram: counts length must be 2^n_atoms");
    }
    ConfigurationHistogram hist;
    hist.n_atoms = n_atoms;
    // The canonical member of each pair has its top bit clear, so classes fit
    // in a dense array of half the configuration space.
    std::vector<std::uint64_t> dense(std::size_t{1} << (n_atoms - 1), 0);
    for (std::uint64_t z = 0; z < counts.size(); ++z) {
        dense[canonical_class(z, n_atoms)] += counts[z];
        hist.total_samples += counts[z];
    }
    for (std::uint64_t rep = 0; rep < dense.size(); ++rep) {
        if (dense[rep] != 0) {
            hist.class_counts.emplace(rep, dense[rep]);
        }
    }
    return hist;
}

std::vector<std::pair<SpinConfiguration, std::uint64_t>> top_k(const ConfigurationHistogram& hist,
                                                           std::size_t k) {
    if (k < 1) {
        throw std::invalid_argument("top_k: k must be at least 1");
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries(hist.class_counts.begin(),
                                                                 hist.class_counts.end());
    const std::size_t keep = std::min(k, entries.size());
    std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(keep),
                      entries.end(), [](const auto& a, const auto& b) {
                          if (a.second != b.second) {
                              return a.second > b.second;
                          }
                          return a.first < b.first;
                      });
    entries.resize(keep);
    return entries;
}

double uniform_baseline(int n_atoms) {
    if (n_atoms < 1) {
        throw std::invalid_argument("uniform_baseline: n_atoms must be at least 1");
    }
    return std::ldexp(1.0, -(n_atoms - 1)); // 2 / 2^n, exact
}

double ground_state_probability(std::span<const double> probs, const GroundStates& ground) {
    double total = 0.0;
    for (const std::uint64_t z : ground.configs) {
        if (z >= probs.size()) {
            throw std::invalid_argument("ground_state_probability: distribution too short");
        }
        total += probs[z];
    }
    return total;
}

double ground_state_probability(std::span<const double> probs, const ChainSpec& chain) {
    return ground_state_probability(probs, ground_states(chain));
}

std::string format_bits(SpinConfiguration config, int n_atoms) {
    std::string bits(static_cast<std::size_t>(n_atoms), '0');
    for (int q = 0; q < n_atoms; ++q) {
        if ((config >> q) & 1U) {
            bits[static_cast<std::size_t>(q)] = '1';
        }
    }
    return bits;
}

std::string histogram_csv(const ConfigurationHistogram& hist, std::size_t k) {
    std::string out = "representative_bits,count,fraction\n";
    char fraction[64];
    for (const auto& [rep, count] : top_k(hist, k)) {
        const double frac =
            static_cast<double>(count) / static_cast<double>(hist.total_samples);
        std::snprintf(fraction, sizeof(fraction), "%.17g", frac);
        out += format_bits(rep, hist.n_atoms) + "," + std::to_string(count) + "," + fraction +
               "\n";
    }
    return out;
}

} // namespace qchain
