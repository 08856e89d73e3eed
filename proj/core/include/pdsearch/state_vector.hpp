#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "pdsearch/errors.hpp"

namespace pdsearch {

/// Dense simulation is capped at 2^(kMaxRegisterQubits + 1) amplitudes.
inline constexpr int kMaxRegisterQubits = 24;

/// The oracle: the set of item indices the search is looking for.
///
/// Members are kept sorted and duplicate-free. An empty set is legal for the
/// simulator (the oracle degenerates to the identity); analytic operations
/// reject it.
class MarkedSet {
  public:
    MarkedSet(int index_qubits, std::vector<std::uint64_t> members);

    /// Every item marked.
    static MarkedSet all(int index_qubits);

    /// `count` distinct items drawn uniformly with a seeded generator.
    static MarkedSet random(int index_qubits, std::uint64_t count, std::uint64_t seed);

    int index_qubits() const noexcept { return n_; }
    std::uint64_t item_count() const noexcept { return std::uint64_t{1} << n_; }
    std::uint64_t match_count() const noexcept { return members_.size(); }
    bool contains(std::uint64_t item) const noexcept;
    const std::vector<std::uint64_t>& members() const noexcept { return members_; }

  private:
    int n_;
    std::vector<std::uint64_t> members_;
};

/// Real amplitudes of an (n+1)-qubit register.
///
/// The extra qubit is the oracle workspace and occupies the least significant
/// position: basis state (item i, workspace w) sits at position 2*i + w, so
/// the workspace-0 subspace is the even positions and workspace-1 the odd
/// ones. Amplitudes are stored as complex<double> so the gate-level circuit
/// machinery can reuse the layout; every operation in this module produces
/// zero imaginary parts.
class StateVector {
  public:
    explicit StateVector(int index_qubits);

    int index_qubits() const noexcept { return n_; }
    std::uint64_t item_count() const noexcept { return std::uint64_t{1} << n_; }
    std::size_t dimension() const noexcept { return amps_.size(); }

    std::complex<double>& operator[](std::uint64_t position) { return amps_[position]; }
    const std::complex<double>& operator[](std::uint64_t position) const { return amps_[position]; }

    std::span<std::complex<double>> amplitudes() noexcept { return amps_; }
    std::span<const std::complex<double>> amplitudes() const noexcept { return amps_; }

    double norm_squared() const noexcept;
    double max_abs_imag() const noexcept;

  private:
    int n_;
    std::vector<std::complex<double>> amps_;
};

/// The three distinct amplitude values the search state collapses to:
/// unmarked items on workspace 0, marked items on workspace 0, and marked
/// items on workspace 1. Unmarked items never acquire workspace-1 amplitude.
struct AmplitudeTriple {
    double unmarked = 0.0;
    double marked = 0.0;
    double marked_flipped = 0.0;
    /// Iteration the triple belongs to; -1 when not tied to a specific count.
    std::int64_t iteration = -1;
};

/// |0...0> on n+1 qubits. Throws SizeError unless 1 <= n <= kMaxRegisterQubits.
StateVector new_register(int index_qubits);

/// Hadamard on each index-register qubit; the workspace is untouched.
StateVector apply_walsh_init(StateVector state);

/// Workspace <- workspace XOR f(item): swaps positions 2i and 2i+1 for every
/// marked i. Self-inverse.
StateVector apply_oracle(StateVector state, const MarkedSet& marked);

/// Inversion about the mean on the workspace-0 subspace, sign flip on the
/// workspace-1 subspace. One pass for the mean, one for the update; the
/// operator matrix is never materialized. Self-inverse.
StateVector apply_partial_diffusion(StateVector state);

/// Fresh register -> walsh init -> `iterations` rounds of (oracle, partial
/// diffusion). Deterministic.
StateVector run_search(int index_qubits, const MarkedSet& marked, std::int64_t iterations);

/// Probability of observing each item on a measurement of the index register:
/// p(i) = |amp(2i)|^2 + |amp(2i+1)|^2.
std::vector<double> measure_item_probabilities(const StateVector& state);

/// Total probability of the marked items.
double success_probability(const StateVector& state, const MarkedSet& marked);

/// Reads off (unmarked, marked, marked_flipped) from a search state, checking
/// within 1e-9 that each class of positions really is constant and that
/// unmarked workspace-1 amplitudes vanish. Throws InvariantError otherwise.
/// When every item is marked the unmarked component is reported as 0; when
/// none is, the marked components are 0.
AmplitudeTriple extract_amplitude_triple(const StateVector& state, const MarkedSet& marked);

}  // namespace pdsearch
