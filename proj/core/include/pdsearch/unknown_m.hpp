#pragma once

#include <cstdint>
#include <optional>

#include "pdsearch/analytic.hpp"
#include "pdsearch/grover.hpp"
#include "pdsearch/state_vector.hpp"

namespace pdsearch {

/// Knobs of the randomized driver for an unknown match count.
struct DriverConfig {
    /// Growth factor applied to the iteration window after a failed round.
    /// Must lie in (1, 4/3].
    double growth = 8.0 / 7.0;
    std::uint64_t seed = 0;
    /// Safety cap on rounds; 0 picks 10 * ceil(log_growth(sqrt(N))) + 64.
    std::uint64_t max_rounds = 0;
};

/// Outcome of one randomized run.
struct RunRecord {
    std::optional<std::uint64_t> found_index;  // absent only if the cap was hit
    std::uint64_t rounds = 0;
    std::uint64_t total_iterations = 0;  // sum of the drawn iteration counts
    std::uint64_t oracle_calls = 0;      // total_iterations + one check per round
    std::uint64_t seed = 0;
};

/// Cost model of the randomized driver, in units of search iterations.
struct ExpectedCost {
    double pre_critical = 0.0;   // until the window reaches 1/sin(theta)
    double post_critical = 0.0;  // from there to success
    double total = 0.0;
};

/// Randomized search without knowing the match count: grow a window m from 1
/// by the configured factor (capped at sqrt(N)), each round drawing j
/// uniformly from {0, ..., ceil(m)-1}, running j search iterations from a
/// fresh register, sampling one item from the exact measurement distribution,
/// and classically checking it. Deterministic for a fixed seed.
RunRecord run_unknown_m(int index_qubits, const MarkedSet& marked, const DriverConfig& config);

/// Closed form of sum_{q=0}^{terms-1} [sin^2((q+1) theta) + sin^2(q theta)]:
/// terms - cos(theta) sin(2 m theta) / (2 sin(theta)).
double sin_squared_pair_sum(std::int64_t terms, double theta);

/// Probability of success when the iteration count is drawn uniformly from
/// {0, ..., draw_bound-1}: the mean of success_prob over that range, in
/// closed form. Exceeds 0.2725 once draw_bound >= 1/sin(theta) and the match
/// ratio is small.
double average_success_prob(std::int64_t draw_bound, const SearchShape& shape);

/// Expected iteration counts of the driver with the given growth factor,
/// before and after the window reaches the critical scale 1/sin(theta).
/// The growth factor must satisfy growth > 1 and 0.7275 * growth < 1.
ExpectedCost expected_cost_proposed(const SearchShape& shape, double growth = 8.0 / 7.0);

/// Expected iteration count 8 / sin(2 theta_G) of the Grover-based driver.
/// Empty when M > 3N/4, where the estimate's critical scale blows up and the
/// model stops applying.
std::optional<double> expected_cost_grover(const GroverShape& shape);

}  // namespace pdsearch
