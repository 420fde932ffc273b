#include "qchain/statevector.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "qchain/alias_table.hpp"
#include "qchain/rng.hpp"

namespace qchain {

StateVector init_uniform(int n_qubits, int cap) {
    if (n_qubits < 1) {
        throw std::invalid_argument("init_uniform: need at least one qubit");
    }
    if (n_qubits > cap) {
        throw ResourceCapError("init_uniform: " + std::to_string(n_qubits) +
                               " qubits exceeds cap " + std::to_string(cap));
    }
    StateVector state;
    state.n_qubits = n_qubits;
    const std::size_t dim = std::size_t{1} << n_qubits;
    // exact 2^{-n/2} for even n; correctly rounded otherwise
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    state.amps.assign(dim, std::complex<double>{amp, 0.0});
    return state;
}

void apply_cost_layer(StateVector& state, const EnergyTable& table, double gamma) {
    if (table.size() != state.size()) {
        throw std::invalid_argument("apply_cost_layer: table/state dimension mismatch");
    }
    // The ring Hamiltonian takes few distinct values; one exp() per level.
    std::vector<std::complex<double>> phase(table.levels.size());
    for (std::size_t m = 0; m < phase.size(); ++m) {
        phase[m] = std::polar(1.0, -gamma * table.levels[m]);
    }
    auto* amps = state.amps.data();
    const auto* level = table.level_of.data();
    const std::size_t dim = state.size();
    for (std::size_t z = 0; z < dim; ++z) {
        const std::complex<double> ph = phase[level[z]];
        const std::complex<double> a = amps[z];
        amps[z] = {a.real() * ph.real() - a.imag() * ph.imag(),
                   a.real() * ph.imag() + a.imag() * ph.real()};
    }
}

void apply_cost_layer_per_edge(StateVector& state, const ChainSpec& chain,
                               std::span<const double> bond_gammas) {
    validate(chain);
    const std::size_t dim = std::size_t{1} << chain.n_atoms;
    if (state.size() != dim) {
        throw std::invalid_argument("apply_cost_layer_per_edge: state dimension mismatch");
    }
    if (bond_gammas.size() != static_cast<std::size_t>(chain.n_atoms)) {
        throw std::invalid_argument("apply_cost_layer_per_edge: expected one angle per bond");
    }
    auto* amps = state.amps.data();
    for (int b = 0; b < chain.n_atoms; ++b) {
        const int i = b;
        const int j = (b + 1) % chain.n_atoms;
        // exp(-i*gamma*(-J)*s_i*s_j): aligned spins get exp(+i*gamma*J)
        const std::complex<double> aligned = std::polar(1.0, bond_gammas[b] * chain.coupling);
        const std::complex<double> anti = std::polar(1.0, -bond_gammas[b] * chain.coupling);
        for (std::size_t z = 0; z < dim; ++z) {
            const bool is_anti = ((z >> i) ^ (z >> j)) & 1U;
            const std::complex<double> ph = is_anti ? anti : aligned;
            const std::complex<double> a = amps[z];
            amps[z] = {a.real() * ph.real() - a.imag() * ph.imag(),
                       a.real() * ph.imag() + a.imag() * ph.real()};
        }
    }
}

void apply_mixer_layer(StateVector& state, double beta) {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    auto* amps = state.amps.data();
    const std::size_t dim = state.size();
    for (int q = 0; q < state.n_qubits; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t base = 0; base < dim; base += 2 * bit) {
            for (std::size_t z = base; z < base + bit; ++z) {
                const std::complex<double> a0 = amps[z];
                const std::complex<double> a1 = amps[z + bit];
                // (a0, a1) -> (c*a0 - i*s*a1, c*a1 - i*s*a0)
                amps[z] = {c * a0.real() + s * a1.imag(), c * a0.imag() - s * a1.real()};
                amps[z + bit] = {c * a1.real() + s * a0.imag(), c * a1.imag() - s * a0.real()};
            }
        }
    }
}

namespace {

void check_layer_counts(const QaoaParameters& params) {
    if (params.gammas.size() != params.betas.size()) {
        throw std::invalid_argument("QaoaParameters: gammas and betas must have equal length");
    }
}

void check_layer_counts(const ChainSpec& chain, const PerEdgeParameters& params) {
    const std::size_t n = static_cast<std::size_t>(chain.n_atoms);
    if (params.gammas.size() != n * params.betas.size()) {
        throw std::invalid_argument(
            "PerEdgeParameters: need n_atoms cost angles per layer, got " +
            std::to_string(params.gammas.size()));
    }
}

} // namespace

StateVector run_qaoa(const EnergyTable& table, const QaoaParameters& params) {
    check_layer_counts(params);
    StateVector state = init_uniform(table.n_atoms);
    for (int k = 0; k < params.layers(); ++k) {
        apply_cost_layer(state, table, params.gammas[static_cast<std::size_t>(k)]);
        apply_mixer_layer(state, params.betas[static_cast<std::size_t>(k)]);
    }
    return state;
}

StateVector run_qaoa(const ChainSpec& chain, const QaoaParameters& params) {
    return run_qaoa(energy_table(chain), params);
}

StateVector run_qaoa(const ChainSpec& chain, const PerEdgeParameters& params) {
    validate(chain);
    check_layer_counts(chain, params);
    const std::size_t n = static_cast<std::size_t>(chain.n_atoms);
    StateVector state = init_uniform(chain.n_atoms);
    for (int k = 0; k < params.layers(); ++k) {
        const std::span<const double> layer{params.gammas.data() + static_cast<std::size_t>(k) * n,
                                            n};
        apply_cost_layer_per_edge(state, chain, layer);
        apply_mixer_layer(state, params.betas[static_cast<std::size_t>(k)]);
    }
    return state;
}

std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> probs(state.size());
    for (std::size_t z = 0; z < probs.size(); ++z) {
        const std::complex<double> a = state.amps[z];
        probs[z] = a.real() * a.real() + a.imag() * a.imag();
    }
    return probs;
}

double expectation(const StateVector& state, const EnergyTable& table) {
    if (table.size() != state.size()) {
        throw std::invalid_argument("expectation: table/state dimension mismatch");
    }
    double sum = 0.0; // ascending z, pinned order
    for (std::size_t z = 0; z < state.size(); ++z) {
        const std::complex<double> a = state.amps[z];
        sum += (a.real() * a.real() + a.imag() * a.imag()) * table.values[z];
    }
    return sum;
}

namespace {

// Backward-sweep kernels for the adjoint gradient. Each pulls both the state
// and the costate back through the inverse of one layer, and accumulates
// Im<lambda|G|psi> for that layer's generator G in the same sweep. The
// generator commutes with its own layer, so the accumulated value equals the
// inner product at the layer boundary.

double pullback_mixer_generator(StateVector& psi, StateVector& lambda, double beta) {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    auto* a = psi.amps.data();
    auto* b = lambda.amps.data();
    const std::size_t dim = psi.size();
    double acc_im = 0.0; // Im sum_q <lambda|X_q|psi>
    for (int q = 0; q < psi.n_qubits; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t base = 0; base < dim; base += 2 * bit) {
            for (std::size_t z = base; z < base + bit; ++z) {
                const std::complex<double> a0 = a[z];
                const std::complex<double> a1 = a[z + bit];
                const std::complex<double> b0 = b[z];
                const std::complex<double> b1 = b[z + bit];
                // inverse mixer: (x0, x1) -> (c*x0 + i*s*x1, c*x1 + i*s*x0)
                const std::complex<double> na0{c * a0.real() - s * a1.imag(),
                                               c * a0.imag() + s * a1.real()};
                const std::complex<double> na1{c * a1.real() - s * a0.imag(),
                                               c * a1.imag() + s * a0.real()};
                const std::complex<double> nb0{c * b0.real() - s * b1.imag(),
                                               c * b0.imag() + s * b1.real()};
                const std::complex<double> nb1{c * b1.real() - s * b0.imag(),
                                               c * b1.imag() + s * b0.real()};
                a[z] = na0;
                a[z + bit] = na1;
                b[z] = nb0;
                b[z + bit] = nb1;
                // X_q pair term: Im(conj(b0)*a1 + conj(b1)*a0)
                acc_im += nb0.real() * na1.imag() - nb0.imag() * na1.real() +
                          nb1.real() * na0.imag() - nb1.imag() * na0.real();
            }
        }
    }
    return acc_im;
}

double pullback_cost_generator(StateVector& psi, StateVector& lambda, const EnergyTable& table,
                               double gamma) {
    std::vector<std::complex<double>> phase(table.levels.size());
    for (std::size_t m = 0; m < phase.size(); ++m) {
        phase[m] = std::polar(1.0, gamma * table.levels[m]); // conjugate of the forward phase
    }
    auto* a = psi.amps.data();
    auto* b = lambda.amps.data();
    const auto* level = table.level_of.data();
    double acc_im = 0.0; // Im <lambda|H|psi>
    for (std::size_t z = 0; z < psi.size(); ++z) {
        const std::complex<double> ph = phase[level[z]];
        const std::complex<double> a0 = a[z];
        const std::complex<double> b0 = b[z];
        const std::complex<double> na{a0.real() * ph.real() - a0.imag() * ph.imag(),
                                      a0.real() * ph.imag() + a0.imag() * ph.real()};
        const std::complex<double> nb{b0.real() * ph.real() - b0.imag() * ph.imag(),
                                      b0.real() * ph.imag() + b0.imag() * ph.real()};
        a[z] = na;
        b[z] = nb;
        acc_im += table.values[z] * (nb.real() * na.imag() - nb.imag() * na.real());
    }
    return acc_im;
}

// Pulls one bond's phase back and accumulates Im<lambda|D_b|psi> for that
// bond's diagonal term D_b = -J * s_i * s_j.
double pullback_bond_generator(StateVector& psi, StateVector& lambda, const ChainSpec& chain,
                               int bond, double gamma) {
    const int i = bond;
    const int j = (bond + 1) % chain.n_atoms;
    const double coupling = chain.coupling;
    const std::complex<double> aligned = std::polar(1.0, -gamma * coupling);
    const std::complex<double> anti = std::polar(1.0, gamma * coupling);
    auto* a = psi.amps.data();
    auto* b = lambda.amps.data();
    double acc_im = 0.0;
    for (std::size_t z = 0; z < psi.size(); ++z) {
        const bool is_anti = ((z >> i) ^ (z >> j)) & 1U;
        const std::complex<double> ph = is_anti ? anti : aligned;
        const double d = is_anti ? coupling : -coupling;
        const std::complex<double> a0 = a[z];
        const std::complex<double> b0 = b[z];
        const std::complex<double> na{a0.real() * ph.real() - a0.imag() * ph.imag(),
                                      a0.real() * ph.imag() + a0.imag() * ph.real()};
        const std::complex<double> nb{b0.real() * ph.real() - b0.imag() * ph.imag(),
                                      b0.real() * ph.imag() + b0.imag() * ph.real()};
        a[z] = na;
        b[z] = nb;
        acc_im += d * (nb.real() * na.imag() - nb.imag() * na.real());
    }
    return acc_im;
}

StateVector costate(const StateVector& psi, const EnergyTable& table) {
    StateVector lambda = psi;
    for (std::size_t z = 0; z < lambda.size(); ++z) {
        lambda.amps[z] *= table.values[z];
    }
    return lambda;
}

} // namespace

EnergyAndGradient evaluate(const EnergyTable& table, const QaoaParameters& params) {
    check_layer_counts(params);
    const int p = params.layers();

    StateVector psi = run_qaoa(table, params);

    EnergyAndGradient out;
    out.energy = expectation(psi, table);
    out.grad.d_gammas.resize(static_cast<std::size_t>(p));
    out.grad.d_betas.resize(static_cast<std::size_t>(p));
    if (p == 0) {
        return out;
    }

    StateVector lambda = costate(psi, table);
    for (int k = p - 1; k >= 0; --k) {
        const auto ks = static_cast<std::size_t>(k);
        out.grad.d_betas[ks] = 2.0 * pullback_mixer_generator(psi, lambda, params.betas[ks]);
        out.grad.d_gammas[ks] =
            2.0 * pullback_cost_generator(psi, lambda, table, params.gammas[ks]);
    }
    return out;
}

EnergyAndGradient evaluate(const ChainSpec& chain, const QaoaParameters& params) {
    return evaluate(energy_table(chain), params);
}

EnergyAndGradient evaluate(const ChainSpec& chain, const PerEdgeParameters& params,
                           const EnergyTable& table) {
    validate(chain);
    check_layer_counts(chain, params);
    const int p = params.layers();
    const std::size_t n = static_cast<std::size_t>(chain.n_atoms);

    StateVector psi = run_qaoa(chain, params);

    EnergyAndGradient out;
    out.energy = expectation(psi, table);
    out.grad.d_gammas.resize(n * static_cast<std::size_t>(p));
    out.grad.d_betas.resize(static_cast<std::size_t>(p));
    if (p == 0) {
        return out;
    }

    StateVector lambda = costate(psi, table);
    for (int k = p - 1; k >= 0; --k) {
        const auto ks = static_cast<std::size_t>(k);
        out.grad.d_betas[ks] = 2.0 * pullback_mixer_generator(psi, lambda, params.betas[ks]);
        for (int b = chain.n_atoms - 1; b >= 0; --b) {
            const std::size_t idx = ks * n + static_cast<std::size_t>(b);
            out.grad.d_gammas[idx] =
                2.0 * pullback_bond_generator(psi, lambda, chain, b, params.gammas[idx]);
        }
    }
    return out;
}

EnergyAndGradient evaluate(const ChainSpec& chain, const PerEdgeParameters& params) {
    return evaluate(chain, params, energy_table(chain));
}

Gradient gradient(const ChainSpec& chain, const QaoaParameters& params) {
    return evaluate(chain, params).grad;
}

Gradient gradient(const ChainSpec& chain, const PerEdgeParameters& params) {
    return evaluate(chain, params).grad;
}

namespace {

// Fixed shard size decouples sampling output from the worker count.
constexpr std::uint64_t kSampleShardSize = std::uint64_t{1} << 22;

void sample_shard(const AliasTable& alias, std::uint64_t seed, std::uint64_t shard,
                  std::uint64_t n_draws, std::vector<std::uint64_t>& counts) {
    auto gen = rng::make_stream(seed, rng::Stream::Sampler, shard);
    for (std::uint64_t d = 0; d < n_draws; ++d) {
        counts[alias.draw(gen)] += 1;
    }
}

} // namespace

std::vector<std::uint64_t> sample(std::span<const double> probs, std::uint64_t count,
                                  std::uint64_t seed, int n_threads) {
    AliasTable alias(probs);
    std::vector<std::uint64_t> counts(probs.size(), 0);
    if (count == 0) {
        return counts;
    }

    const std::uint64_t n_shards = (count + kSampleShardSize - 1) / kSampleShardSize;
    auto shard_draws = [&](std::uint64_t s) {
        return std::min(kSampleShardSize, count - s * kSampleShardSize);
    };

    if (n_threads <= 1 || n_shards == 1) {
        for (std::uint64_t s = 0; s < n_shards; ++s) {
            sample_shard(alias, seed, s, shard_draws(s), counts);
        }
        return counts;
    }

    const int workers =
        static_cast<int>(std::min<std::uint64_t>(n_shards, static_cast<std::uint64_t>(n_threads)));
    std::mutex merge_mutex;
    std::atomic<std::uint64_t> next_shard{0};
    auto work = [&]() {
        std::vector<std::uint64_t> local(probs.size(), 0);
        for (std::uint64_t s = next_shard.fetch_add(1); s < n_shards;
             s = next_shard.fetch_add(1)) {
            sample_shard(alias, seed, s, shard_draws(s), local);
        }
        const std::lock_guard<std::mutex> lock(merge_mutex);
        for (std::size_t z = 0; z < counts.size(); ++z) {
            counts[z] += local[z];
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back(work);
    }
    for (auto& th : pool) {
        th.join();
    }
    return counts;
}

} // namespace qchain
