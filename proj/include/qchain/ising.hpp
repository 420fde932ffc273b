#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qchain/errors.hpp"

namespace qchain {

/// energy_table allocates 2^n doubles; 26 qubits is 512 MiB.
inline constexpr int kMaxTableAtoms = 26;
/// Default cap for exhaustive ground-state scans.
inline constexpr int kMaxBruteForceAtoms = 24;

enum class Boundary { Periodic };

/// A ring of spins with uniform nearest-neighbour exchange coupling.
/// J > 0 is ferromagnetic; J < 0 (antiferromagnetic) is accepted too.
struct ChainSpec {
    int n_atoms = 12;
    double coupling = 1.0;
    Boundary boundary = Boundary::Periodic;
};

/// Throws std::invalid_argument unless n_atoms >= 3 and coupling is finite
/// and nonzero. A 2-atom ring would duplicate its single bond, so it is
/// rejected rather than special-cased.
void validate(const ChainSpec& chain);

/// An n-bit basis label: bit i is spin i, 0 = up (+1), 1 = down (-1).
using SpinConfiguration = std::uint64_t;

/// Complement the low n bits: the global spin-flip partner of z.
constexpr SpinConfiguration flip_config(SpinConfiguration z, int n_atoms) {
    const std::uint64_t mask =
        (n_atoms >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_atoms) - 1);
    return ~z & mask;
}

/// The n ring bonds {i, (i+1) mod n}, each exactly once, ascending in i.
std::vector<std::pair<int, int>> edges(const ChainSpec& chain);

/// E(z) = -J * sum over bonds of s_i * s_j, with s_i = 1 - 2*bit_i(z).
double energy(const ChainSpec& chain, SpinConfiguration config);

/// All 2^n energies indexed by configuration. A ring energy takes at most
/// floor(n/2)+1 distinct values, so the table also carries a per-entry level
/// index; diagonal circuit layers phase by level instead of calling exp()
/// per amplitude. values[z] == levels[level_of[z]] holds bit-exactly.
struct EnergyTable {
    std::vector<double> values;
    std::vector<std::uint8_t> level_of;
    std::vector<double> levels;
    int n_atoms = 0;

    std::size_t size() const { return values.size(); }
};

EnergyTable energy_table(const ChainSpec& chain, int cap = kMaxTableAtoms);

struct GroundStates {
    double energy = 0.0;
    std::vector<SpinConfiguration> configs; // ascending
};

/// Exhaustive scan; exact minimum and every argmin configuration.
GroundStates ground_states(const ChainSpec& chain, int cap = kMaxBruteForceAtoms);

/// Scan of an already-built table (no extra cap beyond the table's own).
GroundStates ground_states(const EnergyTable& table);

} // namespace qchain
