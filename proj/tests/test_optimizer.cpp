#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qchain/optimizer.hpp"

using namespace qchain;

TEST_CASE("init_parameters") {
    CHECK(init_parameters(0, 1).gammas.empty());
    CHECK(init_parameters(0, 1).betas.empty());

    const QaoaParameters params = init_parameters(10, 4);
    REQUIRE(params.gammas.size() == 10);
    REQUIRE(params.betas.size() == 10);
    for (const double a : params.gammas) {
        CHECK(a >= 0.0);
        CHECK(a < 2.0 * std::numbers::pi);
    }
    for (const double a : params.betas) {
        CHECK(a >= 0.0);
        CHECK(a < 2.0 * std::numbers::pi);
    }

    const QaoaParameters again = init_parameters(10, 4);
    CHECK(again.gammas == params.gammas);
    CHECK(again.betas == params.betas);
    const QaoaParameters other = init_parameters(10, 5);
    CHECK(other.gammas != params.gammas);

    const PerEdgeParameters per_edge = init_parameters_per_edge(3, 6, 4);
    CHECK(per_edge.gammas.size() == 18);
    CHECK(per_edge.betas.size() == 3);
}

TEST_CASE("adam_step") {
    const AdamConfig cfg;

    SUBCASE("zero gradient leaves parameters unchanged") {
        std::vector<double> params{0.4, -1.2};
        const std::vector<double> grads{0.0, 0.0};
        AdamState state(2);
        adam_step(params, grads, state, cfg);
        CHECK(params == std::vector<double>{0.4, -1.2});
        CHECK(state.step == 1);
    }

    SUBCASE("first step follows -lr * sign(g) / (1 + eps/|g|)") {
        for (const double g : {1e-3, 0.5, -7.0, 2000.0, -1e-3}) {
            std::vector<double> params{0.0};
            const std::vector<double> grads{g};
            AdamState state(1);
            adam_step(params, grads, state, cfg);
            const double sign = g > 0.0 ? 1.0 : -1.0;
            const double exact = -cfg.learning_rate * sign / (1.0 + cfg.epsilon / std::abs(g));
            CHECK(params[0] == doctest::Approx(exact).epsilon(1e-12));
            // the sign(g) approximation is tight once |g| dwarfs epsilon
            if (std::abs(g) >= 1e-2) {
                CHECK(std::abs(params[0] + cfg.learning_rate * sign) <
                      cfg.learning_rate * 1e-6);
            }
        }
    }

    SUBCASE("minimizes a scalar parabola") {
        AdamConfig quad_cfg;
        quad_cfg.learning_rate = 0.1;
        double theta = 1.0;
        AdamState state(1);
        for (int step = 0; step < 200; ++step) {
            const std::vector<double> grads{2.0 * theta};
            std::span<double> view{&theta, 1};
            adam_step(view, grads, state, quad_cfg);
        }
        CHECK(std::abs(theta) < 0.05);
    }

    SUBCASE("dimension mismatch") {
        std::vector<double> params{0.0, 1.0};
        const std::vector<double> grads{1.0};
        AdamState state(2);
        CHECK_THROWS_AS(adam_step(params, grads, state, cfg), std::invalid_argument);
    }
}

TEST_CASE("adam config validation") {
    AdamConfig cfg;
    cfg.beta1 = 1.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.learning_rate = 0.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.epochs = -1;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("train") {
    const ChainSpec chain{8, 1.0, Boundary::Periodic};

    SUBCASE("zero epochs records only the initial evaluation") {
        AdamConfig cfg;
        cfg.epochs = 0;
        const TrainingTrace trace = train(chain, 10, cfg, 3);
        REQUIRE(trace.records.size() == 1);
        CHECK(trace.records[0].epoch == 0);
        CHECK(trace.final_gammas == init_parameters(10, 3).gammas);
    }

    SUBCASE("descends and stays in the spectral range") {
        AdamConfig cfg;
        cfg.epochs = 40;
        const TrainingTrace trace = train(chain, 10, cfg, 1);
        REQUIRE(trace.records.size() == 41);
        CHECK(trace.final_energy() < trace.initial_energy());
        double running_min = trace.records[0].energy;
        for (const TraceRecord& r : trace.records) {
            CHECK(r.energy >= -8.0);
            CHECK(r.energy <= 8.0);
            running_min = std::min(running_min, r.energy);
            CHECK(running_min <= trace.records[0].energy);
        }
    }

    SUBCASE("bit-identical traces for identical inputs") {
        AdamConfig cfg;
        cfg.epochs = 15;
        const TrainingTrace a = train(chain, 4, cfg, 11);
        const TrainingTrace b = train(chain, 4, cfg, 11);
        REQUIRE(a.records.size() == b.records.size());
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            CHECK(a.records[i].energy == b.records[i].energy);
        }
        CHECK(a.final_gammas == b.final_gammas);
        CHECK(a.final_betas == b.final_betas);
    }
}

TEST_CASE("train_per_edge") {
    const ChainSpec chain{6, 1.0, Boundary::Periodic};
    AdamConfig cfg;
    cfg.epochs = 20;
    const TrainingTrace trace = train_per_edge(chain, 3, cfg, 2);
    REQUIRE(trace.records.size() == 21);
    CHECK(trace.final_gammas.size() == 18); // p * n bond angles
    CHECK(trace.final_betas.size() == 3);
    CHECK(trace.final_energy() < trace.initial_energy());

    const TrainingTrace again = train_per_edge(chain, 3, cfg, 2);
    CHECK(again.final_gammas == trace.final_gammas);
}
