#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "pdsearch/errors.hpp"

namespace pdsearch {

/// Widest register the circuit machinery will expand into a dense matrix.
inline constexpr int kMaxCircuitWidth = 11;

enum class GateKind { Hadamard, PauliX, ControlledUnitary };

/// One gate: a 2x2 payload on `target`, fired only when every control qubit
/// is 1. Hadamard and PauliX carry their standard payloads; ControlledUnitary
/// carries an arbitrary unitary (possibly with no controls at all).
struct Gate {
    GateKind kind = GateKind::ControlledUnitary;
    int target = 0;
    std::vector<int> controls;
    std::array<std::complex<double>, 4> matrix{};  // row-major

    static Gate hadamard(int target);
    static Gate pauli_x(int target);
    static Gate controlled(int target, std::vector<int> controls,
                           std::array<std::complex<double>, 4> matrix);
};

/// An ordered gate sequence over `width` qubits. Qubit 0 is the workspace,
/// qubits 1..width-1 the index register, matching the simulator's layout.
struct GateList {
    int width = 0;
    std::vector<Gate> gates;
};

/// Square complex matrix, row-major.
struct ComplexMatrix {
    std::size_t dim = 0;
    std::vector<std::complex<double>> entries;

    explicit ComplexMatrix(std::size_t dim)
        : dim(dim), entries(dim * dim, {0.0, 0.0}) {}

    std::complex<double>& at(std::size_t row, std::size_t col) {
        return entries[row * dim + col];
    }
    const std::complex<double>& at(std::size_t row, std::size_t col) const {
        return entries[row * dim + col];
    }
};

/// Gate-level partial diffusion on n+1 qubits: Hadamard and X columns on the
/// index register around a fully controlled diag(-1, 1) on the workspace plus
/// an uncontrolled diag(-1, -1) supplying the global sign. 4n+2 gates.
GateList build_partial_diffusion_circuit(int index_qubits);

/// Ordered product of the gate embeddings, as a dense matrix.
ComplexMatrix gatelist_to_matrix(const GateList& list);

/// Largest absolute entry-wise deviation between the gate-level circuit, the
/// operator built from its defining product, and the simulator kernel applied
/// to every basis vector. Healthy values are at the 1e-15 scale.
double verify_partial_diffusion(int index_qubits);

/// JSON document {width, gates: [{kind, target, controls, matrix}]} with the
/// 2x2 payload as row-major [re, im] pairs.
std::string gatelist_to_json(const GateList& list);

}  // namespace pdsearch
