#include "pdsearch/grover.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace pdsearch {

namespace {

bool is_power_of_two(std::uint64_t value) {
    return value != 0 && (value & (value - 1)) == 0;
}

}  // namespace

GroverShape GroverShape::from_counts(std::uint64_t list_size, std::uint64_t match_count) {
    if (!is_power_of_two(list_size) || list_size < 2) {
        throw DomainError("list size must be a power of two >= 2, got " +
                          std::to_string(list_size));
    }
    if (match_count < 1 || match_count > list_size) {
        throw DomainError("match count must be in [1, N], got " + std::to_string(match_count));
    }
    GroverShape shape;
    shape.list_size = list_size;
    shape.match_count = match_count;
    shape.ratio = static_cast<double>(match_count) / static_cast<double>(list_size);
    shape.theta = std::asin(std::sqrt(shape.ratio));
    return shape;
}

GroverShape GroverShape::from_ratio(double ratio) {
    if (!(ratio > 0.0 && ratio <= 1.0)) {
        throw DomainError("match ratio must lie in (0, 1], got " + std::to_string(ratio));
    }
    GroverShape shape;
    shape.ratio = ratio;
    shape.theta = std::asin(std::sqrt(ratio));
    return shape;
}

std::int64_t grover_iterations(const GroverShape& shape) {
    const auto count =
        static_cast<std::int64_t>(std::floor(std::numbers::pi / (4.0 * shape.theta)));
    const double cap = std::numbers::pi / 4.0 / std::sqrt(shape.ratio);
    if (static_cast<double>(count) > cap) {
        throw InvariantError("Grover iteration count exceeds its O(sqrt(N/M)) cap");
    }
    return count;
}

double grover_success(std::int64_t iterations, const GroverShape& shape) {
    if (iterations < 0) {
        throw DomainError("iteration count must be nonnegative, got " +
                          std::to_string(iterations));
    }
    const double s = std::sin(static_cast<double>(2 * iterations + 1) * shape.theta);
    return s * s;
}

double grover_simulate(int index_qubits, const MarkedSet& marked, std::int64_t iterations) {
    if (index_qubits < 1 || index_qubits > kMaxRegisterQubits) {
        throw SizeError("index register must have between 1 and 24 qubits, got " +
                        std::to_string(index_qubits));
    }
    if (marked.index_qubits() != index_qubits) {
        throw ShapeError("marked set width does not match the requested register");
    }
    if (marked.match_count() == 0) {
        throw DomainError("Grover simulation needs at least one marked item");
    }
    if (iterations < 0) {
        throw DomainError("iteration count must be nonnegative, got " +
                          std::to_string(iterations));
    }

    const std::uint64_t total = std::uint64_t{1} << index_qubits;
    std::vector<double> amps(total, 1.0 / std::sqrt(static_cast<double>(total)));
    for (std::int64_t round = 0; round < iterations; ++round) {
        for (const std::uint64_t item : marked.members()) {
            amps[item] = -amps[item];
        }
        double sum = 0.0;
        for (const double amp : amps) {
            sum += amp;
        }
        const double twice_mean = 2.0 * sum / static_cast<double>(total);
        for (double& amp : amps) {
            amp = twice_mean - amp;
        }
    }

    double probability = 0.0;
    for (const std::uint64_t item : marked.members()) {
        probability += amps[item] * amps[item];
    }
    return std::clamp(probability, 0.0, 1.0);
}

}  // namespace pdsearch
