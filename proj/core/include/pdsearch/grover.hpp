#pragma once

#include <cstdint>

#include "pdsearch/errors.hpp"
#include "pdsearch/state_vector.hpp"

namespace pdsearch {

/// Shape parameters for the Grover baseline: sin^2(theta) = M / N.
struct GroverShape {
    std::uint64_t list_size = 0;    // N; zero in ratio mode
    std::uint64_t match_count = 0;  // M; zero in ratio mode
    double ratio = 0.0;             // M / N
    double theta = 0.0;             // arcsin(sqrt(ratio)), in (0, pi/2]

    static GroverShape from_counts(std::uint64_t list_size, std::uint64_t match_count);
    static GroverShape from_ratio(double ratio);

    bool has_counts() const noexcept { return list_size != 0; }
};

/// floor(pi / (4 theta)); zero once the match ratio exceeds one half. Never
/// exceeds (pi / 4) sqrt(N/M).
std::int64_t grover_iterations(const GroverShape& shape);

/// sin^2((2q + 1) theta): the success probability after q Grover iterations.
double grover_success(std::int64_t iterations, const GroverShape& shape);

/// Dense simulation of `iterations` rounds of (phase flip on marked items,
/// inversion about the mean) from the uniform state. Returns the total marked
/// probability; agrees with grover_success.
double grover_simulate(int index_qubits, const MarkedSet& marked, std::int64_t iterations);

}  // namespace pdsearch
