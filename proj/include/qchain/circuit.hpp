#pragma once

#include <string>
#include <vector>

#include "qchain/ising.hpp"
#include "qchain/statevector.hpp"

namespace qchain {

/// Gate-level simulation is a verification path, not a performance path.
inline constexpr int kMaxCircuitQubits = 12;

enum class GateKind { H, X, Cnot, Rz, Rx };

/// Conventions: Rz(t) = diag(exp(-i*t/2), exp(+i*t/2)); Rx(t) = exp(-i*t*X/2).
struct Gate {
    GateKind kind;
    int target = 0;
    int control = -1;  // Cnot only
    double angle = 0.0; // Rz / Rx only
};

struct CircuitIR {
    int n_qubits = 0;
    std::vector<Gate> gates;
};

/// CNOT(i->j), Rz(2*gamma*(-J)) on j, CNOT(i->j): exactly
/// exp(-i*gamma*(-J)*Z_i Z_j), with no global-phase discrepancy.
CircuitIR zz_block(int n_qubits, int i, int j, double gamma, double coupling);

/// H on every qubit, then per layer one zz_block per ring bond (ascending i)
/// followed by Rx(2*beta) on every qubit. Shared-angle mode only.
CircuitIR build_qaoa_circuit(const ChainSpec& chain, const QaoaParameters& params);

/// Apply the gates in order to |0...0>.
StateVector simulate_circuit(const CircuitIR& ir, int cap = kMaxCircuitQubits);

/// OpenQASM 2.0 text; one statement per line, angles at 17 significant digits.
std::string export_qasm(const CircuitIR& ir);

} // namespace qchain
