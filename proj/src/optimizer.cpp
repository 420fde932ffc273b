#include "qchain/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qchain/rng.hpp"

namespace qchain {

void validate(const AdamConfig& cfg) {
    if (!(cfg.learning_rate > 0.0)) {
        throw std::invalid_argument("AdamConfig: learning_rate must be positive");
    }
    if (!(cfg.beta1 > 0.0 && cfg.beta1 < 1.0) || !(cfg.beta2 > 0.0 && cfg.beta2 < 1.0)) {
        throw std::invalid_argument("AdamConfig: beta1 and beta2 must lie in (0, 1)");
    }
    if (!(cfg.epsilon > 0.0)) {
        throw std::invalid_argument("AdamConfig: epsilon must be positive");
    }
    if (cfg.epochs < 0) {
        throw std::invalid_argument("AdamConfig: epochs must be nonnegative");
    }
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamConfig& cfg) {
    if (params.size() != grads.size() || params.size() != state.first_moment.size()) {
        throw std::invalid_argument("adam_step: dimension mismatch");
    }
    state.step += 1;
    const double bias1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    const double bias2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        state.first_moment[i] = cfg.beta1 * state.first_moment[i] + (1.0 - cfg.beta1) * g;
        state.second_moment[i] = cfg.beta2 * state.second_moment[i] + (1.0 - cfg.beta2) * g * g;
        const double m_hat = state.first_moment[i] / bias1;
        const double v_hat = state.second_moment[i] / bias2;
        params[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
}

namespace {

std::vector<double> draw_angles(std::mt19937_64& gen, std::size_t count) {
    std::vector<double> angles(count);
    for (auto& a : angles) {
        a = 2.0 * std::numbers::pi * rng::uniform_double(gen);
    }
    return angles;
}

} // namespace

QaoaParameters init_parameters(int p, std::uint64_t seed) {
    if (p < 0) {
        throw std::invalid_argument("init_parameters: layer count must be nonnegative");
    }
    auto gen = rng::make_stream(seed, rng::Stream::ParameterInit);
    QaoaParameters params;
    params.gammas = draw_angles(gen, static_cast<std::size_t>(p));
    params.betas = draw_angles(gen, static_cast<std::size_t>(p));
    return params;
}

PerEdgeParameters init_parameters_per_edge(int p, int n_bonds, std::uint64_t seed) {
    if (p < 0 || n_bonds < 0) {
        throw std::invalid_argument("init_parameters_per_edge: counts must be nonnegative");
    }
    auto gen = rng::make_stream(seed, rng::Stream::ParameterInit);
    PerEdgeParameters params;
    params.gammas = draw_angles(gen, static_cast<std::size_t>(p) * static_cast<std::size_t>(n_bonds));
    params.betas = draw_angles(gen, static_cast<std::size_t>(p));
    return params;
}

namespace {

// Shared loop body: step on the flat [gammas | betas] vector; the caller
// supplies an evaluator returning energy + gradient at the current params.
template <typename Params, typename Evaluator>
TrainingTrace train_loop(Params params, const AdamConfig& cfg, std::uint64_t seed,
                         Evaluator&& evaluate_at) {
    validate(cfg);
    const std::size_t n_gamma = params.gammas.size();
    const std::size_t dim = n_gamma + params.betas.size();

    TrainingTrace trace;
    trace.seed = seed;
    trace.records.reserve(static_cast<std::size_t>(cfg.epochs) + 1);

    AdamState state(dim);
    std::vector<double> flat(dim);
    std::vector<double> grad_flat(dim);

    EnergyAndGradient eval = evaluate_at(params);
    trace.records.push_back({0, eval.energy});

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::copy(params.gammas.begin(), params.gammas.end(), flat.begin());
        std::copy(params.betas.begin(), params.betas.end(), flat.begin() + n_gamma);
        std::copy(eval.grad.d_gammas.begin(), eval.grad.d_gammas.end(), grad_flat.begin());
        std::copy(eval.grad.d_betas.begin(), eval.grad.d_betas.end(),
                  grad_flat.begin() + n_gamma);

        adam_step(flat, grad_flat, state, cfg);

        std::copy(flat.begin(), flat.begin() + n_gamma, params.gammas.begin());
        std::copy(flat.begin() + n_gamma, flat.end(), params.betas.begin());

        eval = evaluate_at(params);
        trace.records.push_back({epoch, eval.energy});
    }

    trace.final_gammas = std::move(params.gammas);
    trace.final_betas = std::move(params.betas);
    return trace;
}

} // namespace

TrainingTrace train(const ChainSpec& chain, int p, const AdamConfig& cfg, std::uint64_t seed) {
    validate(chain);
    const EnergyTable table = energy_table(chain);
    return train_loop(init_parameters(p, seed), cfg, seed,
                      [&](const QaoaParameters& params) { return evaluate(table, params); });
}

TrainingTrace train_per_edge(const ChainSpec& chain, int p, const AdamConfig& cfg,
                             std::uint64_t seed) {
    validate(chain);
    const EnergyTable table = energy_table(chain);
    return train_loop(init_parameters_per_edge(p, chain.n_atoms, seed), cfg, seed,
                      [&](const PerEdgeParameters& params) {
                          return evaluate(chain, params, table);
                      });
}

} // namespace qchain
