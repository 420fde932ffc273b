#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qchain/ising.hpp"

namespace qchain {

inline constexpr int kMaxQubits = 26;

/// Dense 2^n-amplitude state. Unit norm after construction; cost and mixer
/// layers are unitary and keep it that way.
struct StateVector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amps;

    std::size_t size() const { return amps.size(); }
};

/// The equi-superposed state: every amplitude 2^{-n/2}, real and positive.
StateVector init_uniform(int n_qubits, int cap = kMaxQubits);

/// Diagonal cost layer: amps[z] *= exp(-i * gamma * E(z)).
void apply_cost_layer(StateVector& state, const EnergyTable& table, double gamma);

/// Per-edge cost layer: one phase exp(-i * gamma_b * (-J) * s_i * s_j) per
/// ring bond, bond order matching edges(). With all bond angles equal this
/// reproduces apply_cost_layer up to floating point.
void apply_cost_layer_per_edge(StateVector& state, const ChainSpec& chain,
                               std::span<const double> bond_gammas);

/// Mixer layer exp(-i * beta * sum_q X_q): an Rx(2*beta) on every qubit.
void apply_mixer_layer(StateVector& state, double beta);

/// One shared cost angle and one mixer angle per layer; 2p scalars total.
struct QaoaParameters {
    std::vector<double> gammas;
    std::vector<double> betas;

    int layers() const { return static_cast<int>(betas.size()); }
};

/// Per-edge variant: n bond angles per layer, layer-major
/// (gammas[k*n_bonds + b] is layer k, bond b), plus one mixer angle per layer.
struct PerEdgeParameters {
    std::vector<double> gammas;
    std::vector<double> betas;

    int layers() const { return static_cast<int>(betas.size()); }
};

/// Uniform init, then alternately cost layer k and mixer layer k.
StateVector run_qaoa(const ChainSpec& chain, const QaoaParameters& params);
StateVector run_qaoa(const ChainSpec& chain, const PerEdgeParameters& params);
/// Same, reusing a prebuilt energy table (training calls this in a loop).
StateVector run_qaoa(const EnergyTable& table, const QaoaParameters& params);

/// p[z] = |amps[z]|^2.
std::vector<double> probabilities(const StateVector& state);

/// <H> = sum_z |amps[z]|^2 * E(z), accumulated in ascending z so the result
/// is bitwise reproducible.
double expectation(const StateVector& state, const EnergyTable& table);

struct Gradient {
    std::vector<double> d_gammas;
    std::vector<double> d_betas;
};

struct EnergyAndGradient {
    double energy = 0.0;
    Gradient grad;
};

/// Exact d<H>/d(gamma_k), d<H>/d(beta_k) by reverse-pass (adjoint)
/// differentiation: one forward sweep, one backward sweep, O(p) extra layer
/// applications. Also reports <H> at the given parameters, which the forward
/// pass produces for free.
EnergyAndGradient evaluate(const EnergyTable& table, const QaoaParameters& params);
EnergyAndGradient evaluate(const ChainSpec& chain, const QaoaParameters& params);
EnergyAndGradient evaluate(const ChainSpec& chain, const PerEdgeParameters& params,
                           const EnergyTable& table);
EnergyAndGradient evaluate(const ChainSpec& chain, const PerEdgeParameters& params);

Gradient gradient(const ChainSpec& chain, const QaoaParameters& params);
Gradient gradient(const ChainSpec& chain, const PerEdgeParameters& params);

/// Draw `count` configurations from a categorical distribution via an alias
/// table and return per-configuration counts. Deterministic per seed, and
/// independent of n_threads: work is split into fixed-size shards with
/// per-shard substreams, and integer counts merge exactly.
std::vector<std::uint64_t> sample(std::span<const double> probs, std::uint64_t count,
                                  std::uint64_t seed, int n_threads = 1);

} // namespace qchain
