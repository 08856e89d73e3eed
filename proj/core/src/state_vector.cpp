#include "pdsearch/state_vector.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "rng.hpp"

namespace pdsearch {

namespace {

void check_register_width(int index_qubits) {
    if (index_qubits < 1 || index_qubits > kMaxRegisterQubits) {
        throw SizeError("index register must have between 1 and " +
                        std::to_string(kMaxRegisterQubits) + " qubits, got " +
                        std::to_string(index_qubits));
    }
}

void check_same_width(const StateVector& state, const MarkedSet& marked) {
    if (state.index_qubits() != marked.index_qubits()) {
        throw ShapeError("state register has " + std::to_string(state.index_qubits()) +
                         " index qubits but marked set was built for " +
                         std::to_string(marked.index_qubits()));
    }
}

#ifndef NDEBUG
void debug_check_state(const StateVector& state) {
    assert(std::abs(state.norm_squared() - 1.0) <= 1e-10);
    assert(state.max_abs_imag() <= 1e-12);
}
#else
void debug_check_state(const StateVector&) {}
#endif

}  // namespace

MarkedSet::MarkedSet(int index_qubits, std::vector<std::uint64_t> members)
    : n_(index_qubits), members_(std::move(members)) {
    check_register_width(index_qubits);
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= item_count()) {
        throw DomainError("marked item " + std::to_string(members_.back()) +
                          " is outside the list of size " + std::to_string(item_count()));
    }
}

MarkedSet MarkedSet::all(int index_qubits) {
    check_register_width(index_qubits);
    std::vector<std::uint64_t> everyone(std::uint64_t{1} << index_qubits);
    for (std::uint64_t i = 0; i < everyone.size(); ++i) {
        everyone[i] = i;
    }
    return MarkedSet(index_qubits, std::move(everyone));
}

MarkedSet MarkedSet::random(int index_qubits, std::uint64_t count, std::uint64_t seed) {
    check_register_width(index_qubits);
    const std::uint64_t total = std::uint64_t{1} << index_qubits;
    if (count > total) {
        throw DomainError("cannot mark " + std::to_string(count) + " items out of " +
                          std::to_string(total));
    }
    // Floyd's sampling: `count` distinct values without materializing the list.
    std::mt19937_64 rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(count);
    for (std::uint64_t top = total - count; top < total; ++top) {
        const std::uint64_t candidate = detail::uniform_below(rng, top + 1);
        if (!chosen.insert(candidate).second) {
            chosen.insert(top);
        }
    }
    return MarkedSet(index_qubits, std::vector<std::uint64_t>(chosen.begin(), chosen.end()));
}

bool MarkedSet::contains(std::uint64_t item) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), item);
}

StateVector::StateVector(int index_qubits) : n_(index_qubits) {
    check_register_width(index_qubits);
    amps_.assign(std::size_t{2} << index_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

double StateVector::norm_squared() const noexcept {
    double total = 0.0;
    for (const auto& amp : amps_) {
        total += std::norm(amp);
    }
    return total;
}

double StateVector::max_abs_imag() const noexcept {
    double worst = 0.0;
    for (const auto& amp : amps_) {
        worst = std::max(worst, std::abs(amp.imag()));
    }
    return worst;
}

StateVector new_register(int index_qubits) {
    return StateVector(index_qubits);
}

StateVector apply_walsh_init(StateVector state) {
    auto amps = state.amplitudes();
    const std::uint64_t dim = amps.size();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // Index-register qubits live at bit positions 1..n; bit 0 is the workspace.
    for (int qubit = 1; qubit <= state.index_qubits(); ++qubit) {
        const std::uint64_t bit = std::uint64_t{1} << qubit;
        for (std::uint64_t low = 0; low < dim; ++low) {
            if (low & bit) {
                continue;
            }
            const std::uint64_t high = low | bit;
            const auto a = amps[low];
            const auto b = amps[high];
            amps[low] = (a + b) * inv_sqrt2;
            amps[high] = (a - b) * inv_sqrt2;
        }
    }
    debug_check_state(state);
    return state;
}

StateVector apply_oracle(StateVector state, const MarkedSet& marked) {
    check_same_width(state, marked);
    auto amps = state.amplitudes();
    for (const std::uint64_t item : marked.members()) {
        std::swap(amps[2 * item], amps[2 * item + 1]);
    }
    debug_check_state(state);
    return state;
}

StateVector apply_partial_diffusion(StateVector state) {
    auto amps = state.amplitudes();
    const std::uint64_t dim = amps.size();
    std::complex<double> sum{0.0, 0.0};
    for (std::uint64_t pos = 0; pos < dim; pos += 2) {
        sum += amps[pos];
    }
    // dim == 2N, so the subspace mean is 2*sum/dim.
    const std::complex<double> twice_mean = sum * (4.0 / static_cast<double>(dim));
    for (std::uint64_t pos = 0; pos < dim; pos += 2) {
        amps[pos] = twice_mean - amps[pos];
    }
    for (std::uint64_t pos = 1; pos < dim; pos += 2) {
        amps[pos] = -amps[pos];
    }
    debug_check_state(state);
    return state;
}

StateVector run_search(int index_qubits, const MarkedSet& marked, std::int64_t iterations) {
    if (iterations < 0) {
        throw DomainError("iteration count must be nonnegative, got " +
                          std::to_string(iterations));
    }
    StateVector state = apply_walsh_init(new_register(index_qubits));
    check_same_width(state, marked);
    for (std::int64_t i = 0; i < iterations; ++i) {
        state = apply_partial_diffusion(apply_oracle(std::move(state), marked));
    }
    return state;
}

std::vector<double> measure_item_probabilities(const StateVector& state) {
    std::vector<double> probs(state.item_count());
    for (std::uint64_t item = 0; item < probs.size(); ++item) {
        probs[item] = std::norm(state[2 * item]) + std::norm(state[2 * item + 1]);
    }
    return probs;
}

double success_probability(const StateVector& state, const MarkedSet& marked) {
    check_same_width(state, marked);
    double total = 0.0;
    for (const std::uint64_t item : marked.members()) {
        total += std::norm(state[2 * item]) + std::norm(state[2 * item + 1]);
    }
    return std::clamp(total, 0.0, 1.0);
}

AmplitudeTriple extract_amplitude_triple(const StateVector& state, const MarkedSet& marked) {
    check_same_width(state, marked);
    constexpr double tol = 1e-9;

    AmplitudeTriple triple;
    bool seen_unmarked = false;
    bool seen_marked = false;
    auto next_marked = marked.members().begin();
    const auto marked_end = marked.members().end();

    for (std::uint64_t item = 0; item < state.item_count(); ++item) {
        const auto even = state[2 * item];
        const auto odd = state[2 * item + 1];
        if (std::abs(even.imag()) > tol || std::abs(odd.imag()) > tol) {
            throw InvariantError("search state has a non-real amplitude at item " +
                                 std::to_string(item));
        }
        const bool is_marked = next_marked != marked_end && *next_marked == item;
        if (is_marked) {
            ++next_marked;
            if (!seen_marked) {
                triple.marked = even.real();
                triple.marked_flipped = odd.real();
                seen_marked = true;
            } else if (std::abs(even.real() - triple.marked) > tol ||
                       std::abs(odd.real() - triple.marked_flipped) > tol) {
                throw InvariantError("marked amplitudes are not constant across items");
            }
        } else {
            if (std::abs(odd) > tol) {
                throw InvariantError("unmarked item " + std::to_string(item) +
                                     " has workspace-1 amplitude");
            }
            if (!seen_unmarked) {
                triple.unmarked = even.real();
                seen_unmarked = true;
            } else if (std::abs(even.real() - triple.unmarked) > tol) {
                throw InvariantError("unmarked amplitudes are not constant across items");
            }
        }
    }
    return triple;
}

}  // namespace pdsearch
