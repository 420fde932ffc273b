#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qchain/ising.hpp"

namespace qchain {

/// Counts aggregated over flip-equivalence classes. Keys are canonical
/// representatives (the numerically smaller member of each flip pair), stored
/// sparsely: only observed classes appear.
struct ConfigurationHistogram {
    std::map<SpinConfiguration, std::uint64_t> class_counts;
    std::uint64_t total_samples = 0;
    int n_atoms = 0;
};

/// min(config, flip(config)): the class representative. Idempotent.
SpinConfiguration canonical_class(SpinConfiguration config, int n_atoms);

/// Aggregate per-configuration counts into flip classes; totals preserved.
ConfigurationHistogram histogram(std::span<const std::uint64_t> counts, int n_atoms);

/// k classes by descending count, ties broken by ascending representative.
std::vector<std::pair<SpinConfiguration, std::uint64_t>> top_k(const ConfigurationHistogram& hist,
                                                           std::size_t k);

/// 2 / 2^n: the chance one uniform draw hits either all-aligned
/// configuration. A power of two, hence exact in a double.
double uniform_baseline(int n_atoms);

/// Total probability mass on the exact ground set of the chain.
double ground_state_probability(std::span<const double> probs, const GroundStates& ground);
double ground_state_probability(std::span<const double> probs, const ChainSpec& chain);

/// Fixed rendering convention: qubit 0 is the leftmost character.
std::string format_bits(SpinConfiguration config, int n_atoms);

/// CSV rows `representative_bits,count,fraction`, descending count,
/// truncated to the top k classes; header included.
std::string histogram_csv(const ConfigurationHistogram& hist, std::size_t k);

} // namespace qchain
