#include "pdsearch/unknown_m.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "rng.hpp"

namespace pdsearch {

namespace {

constexpr double kCriticalFailureRate = 0.7275;

void check_growth(double growth) {
    if (!(growth > 1.0 && growth <= 4.0 / 3.0)) {
        throw DomainError("growth factor must lie in (1, 4/3], got " + std::to_string(growth));
    }
}

std::uint64_t default_max_rounds(std::uint64_t list_size, double growth) {
    const double window_cap = std::sqrt(static_cast<double>(list_size));
    const double rounds_to_cap = std::ceil(std::log(window_cap) / std::log(growth));
    return 10 * static_cast<std::uint64_t>(std::max(rounds_to_cap, 0.0)) + 64;
}

/// Inverse-CDF draw from the exact measurement distribution.
std::uint64_t sample_item(const StateVector& state, std::mt19937_64& rng) {
    const double u = detail::uniform_unit(rng);
    double cumulative = 0.0;
    const std::uint64_t items = state.item_count();
    for (std::uint64_t item = 0; item < items; ++item) {
        cumulative += std::norm(state[2 * item]) + std::norm(state[2 * item + 1]);
        if (u < cumulative) {
            return item;
        }
    }
    return items - 1;
}

}  // namespace

RunRecord run_unknown_m(int index_qubits, const MarkedSet& marked, const DriverConfig& config) {
    check_growth(config.growth);
    if (marked.match_count() == 0) {
        throw DomainError("the randomized driver needs at least one marked item");
    }
    if (marked.index_qubits() != index_qubits) {
        throw ShapeError("marked set width does not match the requested register");
    }

    const std::uint64_t list_size = std::uint64_t{1} << index_qubits;
    const double window_cap = std::sqrt(static_cast<double>(list_size));
    const std::uint64_t max_rounds =
        config.max_rounds != 0 ? config.max_rounds
                               : default_max_rounds(list_size, config.growth);

    std::mt19937_64 rng(config.seed);
    RunRecord record;
    record.seed = config.seed;

    double window = 1.0;
    while (record.rounds < max_rounds) {
        ++record.rounds;
        const auto choices = static_cast<std::uint64_t>(std::ceil(window));
        const std::uint64_t draws = detail::uniform_below(rng, choices);
        record.total_iterations += draws;

        const StateVector state =
            run_search(index_qubits, marked, static_cast<std::int64_t>(draws));
        const std::uint64_t outcome = sample_item(state, rng);
        if (marked.contains(outcome)) {
            record.found_index = outcome;
            break;
        }
        window = std::min(config.growth * window, window_cap);
    }
    record.oracle_calls = record.total_iterations + record.rounds;
    return record;
}

double sin_squared_pair_sum(std::int64_t terms, double theta) {
    if (terms < 1) {
        throw DomainError("term count must be positive, got " + std::to_string(terms));
    }
    if (!(theta > 0.0 && theta <= std::numbers::pi / 2.0)) {
        throw DomainError("theta must lie in (0, pi/2], got " + std::to_string(theta));
    }
    const double m = static_cast<double>(terms);
    return m - std::cos(theta) * std::sin(2.0 * m * theta) / (2.0 * std::sin(theta));
}

double average_success_prob(std::int64_t draw_bound, const SearchShape& shape) {
    if (draw_bound < 1) {
        throw DomainError("draw bound must be positive, got " + std::to_string(draw_bound));
    }
    const double y = shape.cos_theta;
    const double m = static_cast<double>(draw_bound);
    const double correction =
        y * std::sin(2.0 * m * shape.theta) / (2.0 * m * std::sin(shape.theta));
    return (1.0 - correction) / (1.0 + y);
}

ExpectedCost expected_cost_proposed(const SearchShape& shape, double growth) {
    // Broader domain than the driver itself: any growth rate with a convergent
    // post-critical series is admitted.
    if (!(growth > 1.0)) {
        throw DomainError("growth factor must exceed 1, got " + std::to_string(growth));
    }
    if (kCriticalFailureRate * growth >= 1.0) {
        throw DomainError("growth factor too large: the post-critical series diverges");
    }
    const double critical_scale = 1.0 / std::sin(shape.theta);  // window size 1/sin(theta)
    ExpectedCost cost;
    cost.pre_critical = critical_scale / (2.0 * (growth - 1.0));
    cost.post_critical = critical_scale / (2.0 * (1.0 - kCriticalFailureRate * growth));
    cost.total = cost.pre_critical + cost.post_critical;
    return cost;
}

std::optional<double> expected_cost_grover(const GroverShape& shape) {
    if (shape.ratio > 0.75) {
        return std::nullopt;
    }
    return 8.0 / std::sin(2.0 * shape.theta);
}

}  // namespace pdsearch
