#include "qchain/ising.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qchain {

void validate(const ChainSpec& chain) {
    if (chain.n_atoms < 3) {
        throw std::invalid_argument("ChainSpec: n_atoms must be at least 3, got " +
                                    std::to_string(chain.n_atoms));
    }
    if (!std::isfinite(chain.coupling) || chain.coupling == 0.0) {
        throw std::invalid_argument("ChainSpec: coupling must be finite and nonzero");
    }
}

std::vector<std::pair<int, int>> edges(const ChainSpec& chain) {
    validate(chain);
    std::vector<std::pair<int, int>> bonds;
    bonds.reserve(static_cast<std::size_t>(chain.n_atoms));
    for (int i = 0; i < chain.n_atoms; ++i) {
        bonds.emplace_back(i, (i + 1) % chain.n_atoms);
    }
    return bonds;
}

namespace {

// Number of anti-aligned bonds on the ring: bit i of z ^ rotl(z) compares
// spins i and i+1 mod n. Always even (domain walls come in pairs).
int anti_aligned_bonds(std::uint64_t z, int n) {
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    const std::uint64_t rotated = ((z >> 1) | (z << (n - 1))) & mask;
    return std::popcount((z ^ rotated) & mask);
}

} // namespace

double energy(const ChainSpec& chain, SpinConfiguration config) {
    validate(chain);
    if (chain.n_atoms < 64 && config >= (std::uint64_t{1} << chain.n_atoms)) {
        throw std::invalid_argument("energy: configuration out of range for chain length");
    }
    // E = -J * (aligned - anti) = -J * (n - 2k); exact in integer arithmetic.
    // The + 0.0 turns -0 into +0 so CSV dumps never print "-0".
    const int k = anti_aligned_bonds(config, chain.n_atoms);
    return -chain.coupling * static_cast<double>(chain.n_atoms - 2 * k) + 0.0;
}

EnergyTable energy_table(const ChainSpec& chain, int cap) {
    validate(chain);
    if (chain.n_atoms > cap) {
        throw ResourceCapError("energy_table: n_atoms " + std::to_string(chain.n_atoms) +
                               " exceeds cap " + std::to_string(cap));
    }
    const int n = chain.n_atoms;
    const std::size_t dim = std::size_t{1} << n;

    EnergyTable table;
    table.n_atoms = n;
    table.levels.resize(static_cast<std::size_t>(n / 2) + 1);
    for (std::size_t m = 0; m < table.levels.size(); ++m) {
        // k = 2m anti-aligned bonds; + 0.0 normalizes -0, matching energy()
        table.levels[m] = -chain.coupling * static_cast<double>(n - 4 * static_cast<int>(m)) + 0.0;
    }
    table.values.resize(dim);
    table.level_of.resize(dim);
    for (std::uint64_t z = 0; z < dim; ++z) {
        const int m = anti_aligned_bonds(z, n) / 2;
        table.level_of[z] = static_cast<std::uint8_t>(m);
        table.values[z] = table.levels[static_cast<std::size_t>(m)];
    }
    return table;
}

GroundStates ground_states(const EnergyTable& table) {
    GroundStates result;
    result.energy = table.values[0];
    for (std::uint64_t z = 0; z < table.values.size(); ++z) {
        if (table.values[z] < result.energy) {
            result.energy = table.values[z];
            result.configs.clear();
        }
        if (table.values[z] == result.energy) {
            result.configs.push_back(z);
        }
    }
    return result;
}

GroundStates ground_states(const ChainSpec& chain, int cap) {
    validate(chain);
    if (chain.n_atoms > cap) {
        throw ResourceCapError("ground_states: n_atoms " + std::to_string(chain.n_atoms) +
                               " exceeds brute-force cap " + std::to_string(cap));
    }
    return ground_states(energy_table(chain, cap));
}

} // namespace qchain
