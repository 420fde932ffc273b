#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qchain/ising.hpp"
#include "qchain/statevector.hpp"

namespace qchain {

struct AdamConfig {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int epochs = 125;
};

void validate(const AdamConfig& cfg);

struct AdamState {
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    std::int64_t step = 0;

    explicit AdamState(std::size_t dim) : first_moment(dim, 0.0), second_moment(dim, 0.0) {}
};

/// Bias-corrected Adam update, in place:
///   m <- b1*m + (1-b1)*g;  v <- b2*v + (1-b2)*g^2
///   theta <- theta - lr * m_hat / (sqrt(v_hat) + eps)
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamConfig& cfg);

/// 2p angles drawn independently and uniformly from [0, 2*pi): gammas first,
/// then betas. Deterministic per seed.
QaoaParameters init_parameters(int p, std::uint64_t seed);

/// p*n_bonds cost angles (layer-major) plus p mixer angles, same distribution.
PerEdgeParameters init_parameters_per_edge(int p, int n_bonds, std::uint64_t seed);

struct TraceRecord {
    int epoch = 0;
    double energy = 0.0;
};

/// Per-epoch energies plus the final parameters. records[0] is the
/// pre-training evaluation, so records.size() == epochs + 1.
struct TrainingTrace {
    std::vector<TraceRecord> records;
    std::uint64_t seed = 0;
    std::vector<double> final_gammas;
    std::vector<double> final_betas;

    double initial_energy() const { return records.front().energy; }
    double final_energy() const { return records.back().energy; }
};

/// Full-batch gradient descent on the exact expectation: one adjoint gradient
/// and one Adam step per epoch, exactly cfg.epochs steps. Bit-identical
/// traces for identical (chain, p, cfg, seed).
TrainingTrace train(const ChainSpec& chain, int p, const AdamConfig& cfg, std::uint64_t seed);

/// Same loop over the per-edge parameterization (p*(n+1) scalars).
TrainingTrace train_per_edge(const ChainSpec& chain, int p, const AdamConfig& cfg,
                             std::uint64_t seed);

} // namespace qchain
