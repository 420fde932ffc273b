#include "qchain/circuit.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace qchain {

namespace {

void check_qubit(int q, int n_qubits, const char* what) {
    if (q < 0 || q >= n_qubits) {
        throw std::invalid_argument(std::string(what) + ": qubit index out of range");
    }
}

} // namespace

CircuitIR zz_block(int n_qubits, int i, int j, double gamma, double coupling) {
    check_qubit(i, n_qubits, "zz_block");
    check_qubit(j, n_qubits, "zz_block");
    if (i == j) {
        throw std::invalid_argument("zz_block: control and target must differ");
    }
    CircuitIR ir;
    ir.n_qubits = n_qubits;
    ir.gates.push_back({GateKind::Cnot, j, i, 0.0});
    ir.gates.push_back({GateKind::Rz, j, -1, 2.0 * gamma * (-coupling)});
    ir.gates.push_back({GateKind::Cnot, j, i, 0.0});
    return ir;
}

CircuitIR build_qaoa_circuit(const ChainSpec& chain, const QaoaParameters& params) {
    validate(chain);
    if (params.gammas.size() != params.betas.size()) {
        throw std::invalid_argument("build_qaoa_circuit: gammas and betas must have equal length");
    }
    const int n = chain.n_atoms;
    CircuitIR ir;
    ir.n_qubits = n;
    ir.gates.reserve(static_cast<std::size_t>(n) * (1 + 4 * params.betas.size()));
    for (int q = 0; q < n; ++q) {
        ir.gates.push_back({GateKind::H, q, -1, 0.0});
    }
    for (int k = 0; k < params.layers(); ++k) {
        for (const auto& [i, j] : edges(chain)) {
            const CircuitIR block =
                zz_block(n, i, j, params.gammas[static_cast<std::size_t>(k)], chain.coupling);
            ir.gates.insert(ir.gates.end(), block.gates.begin(), block.gates.end());
        }
        for (int q = 0; q < n; ++q) {
            ir.gates.push_back({GateKind::Rx, q, -1, 2.0 * params.betas[static_cast<std::size_t>(k)]});
        }
    }
    return ir;
}

namespace {

void apply_single_qubit(StateVector& state, int q, const std::complex<double>& u00,
                        const std::complex<double>& u01, const std::complex<double>& u10,
                        const std::complex<double>& u11) {
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t dim = state.size();
    for (std::size_t base = 0; base < dim; base += 2 * bit) {
        for (std::size_t z = base; z < base + bit; ++z) {
            const std::complex<double> a0 = state.amps[z];
            const std::complex<double> a1 = state.amps[z + bit];
            state.amps[z] = u00 * a0 + u01 * a1;
            state.amps[z + bit] = u10 * a0 + u11 * a1;
        }
    }
}

void apply_cnot(StateVector& state, int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t dim = state.size();
    for (std::size_t z = 0; z < dim; ++z) {
        if ((z & cbit) && !(z & tbit)) {
            std::swap(state.amps[z], state.amps[z | tbit]);
        }
    }
}

} // namespace

StateVector simulate_circuit(const CircuitIR& ir, int cap) {
    if (ir.n_qubits < 1) {
        throw std::invalid_argument("simulate_circuit: need at least one qubit");
    }
    if (ir.n_qubits > cap) {
        throw ResourceCapError("simulate_circuit: " + std::to_string(ir.n_qubits) +
                               " qubits exceeds verification cap " + std::to_string(cap));
    }
    StateVector state;
    state.n_qubits = ir.n_qubits;
    state.amps.assign(std::size_t{1} << ir.n_qubits, {0.0, 0.0});
    state.amps[0] = {1.0, 0.0};

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const Gate& g : ir.gates) {
        check_qubit(g.target, ir.n_qubits, "simulate_circuit");
        switch (g.kind) {
        case GateKind::H:
            apply_single_qubit(state, g.target, {inv_sqrt2, 0.0}, {inv_sqrt2, 0.0},
                               {inv_sqrt2, 0.0}, {-inv_sqrt2, 0.0});
            break;
        case GateKind::X:
            apply_single_qubit(state, g.target, {0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0});
            break;
        case GateKind::Rz:
            apply_single_qubit(state, g.target, std::polar(1.0, -g.angle / 2.0), {0.0, 0.0},
                               {0.0, 0.0}, std::polar(1.0, g.angle / 2.0));
            break;
        case GateKind::Rx: {
            const double c = std::cos(g.angle / 2.0);
            const double s = std::sin(g.angle / 2.0);
            apply_single_qubit(state, g.target, {c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0});
            break;
        }
        case GateKind::Cnot:
            check_qubit(g.control, ir.n_qubits, "simulate_circuit");
            if (g.control == g.target) {
                throw std::invalid_argument("simulate_circuit: CNOT control equals target");
            }
            apply_cnot(state, g.control, g.target);
            break;
        }
    }
    return state;
}

std::string export_qasm(const CircuitIR& ir) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" +
                      std::to_string(ir.n_qubits) + "];\n";
    char angle[64];
    for (const Gate& g : ir.gates) {
        switch (g.kind) {
        case GateKind::H:
            out += "h q[" + std::to_string(g.target) + "];\n";
            break;
        case GateKind::X:
            out += "x q[" + std::to_string(g.target) + "];\n";
            break;
        case GateKind::Cnot:
            out += "cx q[" + std::to_string(g.control) + "],q[" + std::to_string(g.target) +
                   "];\n";
            break;
        case GateKind::Rz:
            std::snprintf(angle, sizeof(angle), "%.17g", g.angle);
            out += "rz(" + std::string(angle) + ") q[" + std::to_string(g.target) + "];\n";
            break;
        case GateKind::Rx:
            std::snprintf(angle, sizeof(angle), "%.17g", g.angle);
            out += "rx(" + std::string(angle) + ") q[" + std::to_string(g.target) + "];\n";
            break;
        }
    }
    return out;
}

} // namespace qchain
