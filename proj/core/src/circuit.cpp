#include "pdsearch/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "json.hpp"

#include "pdsearch/state_vector.hpp"

namespace pdsearch {

namespace {

constexpr double kUnitaryTol = 1e-12;

void check_unitary(const std::array<std::complex<double>, 4>& m) {
    // m * conj(m)^T == I
    const auto a = m[0], b = m[1], c = m[2], d = m[3];
    const auto e00 = a * std::conj(a) + b * std::conj(b);
    const auto e01 = a * std::conj(c) + b * std::conj(d);
    const auto e11 = c * std::conj(c) + d * std::conj(d);
    if (std::abs(e00 - 1.0) > kUnitaryTol || std::abs(e11 - 1.0) > kUnitaryTol ||
        std::abs(e01) > kUnitaryTol) {
        throw DomainError("gate payload is not unitary");
    }
}

void apply_gate(const Gate& gate, std::vector<std::complex<double>>& amps) {
    const std::uint64_t dim = amps.size();
    const std::uint64_t target_bit = std::uint64_t{1} << gate.target;
    std::uint64_t control_mask = 0;
    for (const int control : gate.controls) {
        control_mask |= std::uint64_t{1} << control;
    }
    for (std::uint64_t low = 0; low < dim; ++low) {
        if (low & target_bit) {
            continue;
        }
        if ((low & control_mask) != control_mask) {
            continue;
        }
        const std::uint64_t high = low | target_bit;
        const auto a0 = amps[low];
        const auto a1 = amps[high];
        amps[low] = gate.matrix[0] * a0 + gate.matrix[1] * a1;
        amps[high] = gate.matrix[2] * a0 + gate.matrix[3] * a1;
    }
}

const char* kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Hadamard:
            return "H";
        case GateKind::PauliX:
            return "X";
        case GateKind::ControlledUnitary:
            return "CU";
    }
    return "?";
}

}  // namespace

Gate Gate::hadamard(int target) {
    const double h = 1.0 / std::sqrt(2.0);
    return Gate{GateKind::Hadamard, target, {}, {{{h, 0.0}, {h, 0.0}, {h, 0.0}, {-h, 0.0}}}};
}

Gate Gate::pauli_x(int target) {
    return Gate{GateKind::PauliX, target, {}, {{{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}}};
}

Gate Gate::controlled(int target, std::vector<int> controls,
                      std::array<std::complex<double>, 4> matrix) {
    check_unitary(matrix);
    return Gate{GateKind::ControlledUnitary, target, std::move(controls), matrix};
}

GateList build_partial_diffusion_circuit(int index_qubits) {
    if (index_qubits < 1 || index_qubits >= kMaxCircuitWidth) {
        throw SizeError("circuit construction supports 1 to " +
                        std::to_string(kMaxCircuitWidth - 1) + " index qubits, got " +
                        std::to_string(index_qubits));
    }
    GateList list{index_qubits + 1, {}};
    list.gates.reserve(4 * static_cast<std::size_t>(index_qubits) + 2);

    std::vector<int> index_register(index_qubits);
    for (int q = 0; q < index_qubits; ++q) {
        index_register[q] = q + 1;  // qubit 0 is the workspace
    }

    for (const int q : index_register) {
        list.gates.push_back(Gate::hadamard(q));
    }
    for (const int q : index_register) {
        list.gates.push_back(Gate::pauli_x(q));
    }
    // diag(-1, 1) on the workspace, fired when every index qubit is set; with
    // the X conjugation that is exactly the all-zero index branch.
    list.gates.push_back(Gate::controlled(
        0, index_register, {{{-1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}}));
    // Uncontrolled diag(-1, -1): the global sign. Controlling it would break
    // the product; gatelist_to_matrix-based checks pin this down.
    list.gates.push_back(Gate::controlled(
        0, {}, {{{-1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}}}));
    for (const int q : index_register) {
        list.gates.push_back(Gate::pauli_x(q));
    }
    for (const int q : index_register) {
        list.gates.push_back(Gate::hadamard(q));
    }
    return list;
}

ComplexMatrix gatelist_to_matrix(const GateList& list) {
    if (list.width < 1 || list.width > kMaxCircuitWidth) {
        throw SizeError("dense expansion supports widths 1 to " +
                        std::to_string(kMaxCircuitWidth) + ", got " +
                        std::to_string(list.width));
    }
    for (const Gate& gate : list.gates) {
        if (gate.target < 0 || gate.target >= list.width) {
            throw ShapeError("gate target outside the register");
        }
        for (const int control : gate.controls) {
            if (control < 0 || control >= list.width || control == gate.target) {
                throw ShapeError("gate control outside the register or on its target");
            }
        }
    }

    const std::size_t dim = std::size_t{1} << list.width;
    ComplexMatrix matrix(dim);
    std::vector<std::complex<double>> column(dim);
    for (std::size_t basis = 0; basis < dim; ++basis) {
        std::fill(column.begin(), column.end(), std::complex<double>{0.0, 0.0});
        column[basis] = {1.0, 0.0};
        for (const Gate& gate : list.gates) {
            apply_gate(gate, column);
        }
        for (std::size_t row = 0; row < dim; ++row) {
            matrix.at(row, basis) = column[row];
        }
    }
    return matrix;
}

double verify_partial_diffusion(int index_qubits) {
    if (index_qubits < 1 || index_qubits > 8) {
        throw SizeError("verification supports 1 to 8 index qubits, got " +
                        std::to_string(index_qubits));
    }
    const std::size_t dim = std::size_t{2} << index_qubits;
    const ComplexMatrix circuit = gatelist_to_matrix(build_partial_diffusion_circuit(index_qubits));

    // Route 1: the defining product W (2|0><0| - I) W with W the index-register
    // Walsh-Hadamard transform.
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim / 2));
    ComplexMatrix walsh(dim);
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            if ((row & 1) != (col & 1)) {
                continue;
            }
            const int parity = std::popcount((row >> 1) & (col >> 1)) & 1;
            walsh.at(row, col) = parity ? -scale : scale;
        }
    }
    ComplexMatrix reflected = walsh;  // (2|0><0| - I) W: row 0 kept, others negated
    for (std::size_t row = 1; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            reflected.at(row, col) = -reflected.at(row, col);
        }
    }
    ComplexMatrix product(dim);
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t inner = 0; inner < dim; ++inner) {
            const auto w = walsh.at(row, inner);
            if (w == std::complex<double>{0.0, 0.0}) {
                continue;
            }
            for (std::size_t col = 0; col < dim; ++col) {
                product.at(row, col) += w * reflected.at(inner, col);
            }
        }
    }

    double deviation = 0.0;
    for (std::size_t i = 0; i < dim * dim; ++i) {
        deviation = std::max(deviation, std::abs(circuit.entries[i] - product.entries[i]));
    }

    // Route 2: the simulator kernel on every basis vector.
    for (std::size_t basis = 0; basis < dim; ++basis) {
        StateVector state(index_qubits);
        state[0] = {0.0, 0.0};
        state[basis] = {1.0, 0.0};
        state = apply_partial_diffusion(std::move(state));
        for (std::size_t row = 0; row < dim; ++row) {
            deviation = std::max(deviation, std::abs(circuit.at(row, basis) - state[row]));
        }
    }
    return deviation;
}

std::string gatelist_to_json(const GateList& list) {
    nlohmann::ordered_json doc;
    doc["width"] = list.width;
    auto& gates = doc["gates"] = nlohmann::ordered_json::array();
    for (const Gate& gate : list.gates) {
        nlohmann::ordered_json entry;
        entry["kind"] = kind_name(gate.kind);
        entry["target"] = gate.target;
        entry["controls"] = gate.controls;
        auto& matrix = entry["matrix"] = nlohmann::ordered_json::array();
        for (const auto& cell : gate.matrix) {
            matrix.push_back({cell.real(), cell.imag()});
        }
        gates.push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

}  // namespace pdsearch
