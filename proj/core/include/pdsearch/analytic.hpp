#pragma once

#include <cstdint>

#include "pdsearch/errors.hpp"
#include "pdsearch/state_vector.hpp"

namespace pdsearch {

/// The scalars every closed-form expression is written in: list size N,
/// match count M, the uniform amplitude 1/sqrt(N), and the amplification
/// angle theta with cos(theta) = 1 - M/N.
///
/// Built either from integer counts (N a power of two, 1 <= M <= N) or from a
/// bare ratio in (0, 1] for sweep-style evaluation. Ratio-built shapes carry
/// no counts and cannot feed amplitude-level formulas.
struct SearchShape {
    std::uint64_t list_size = 0;     // N; zero in ratio mode
    std::uint64_t match_count = 0;   // M; zero in ratio mode
    double ratio = 0.0;              // M / N
    double uniform_amplitude = 0.0;  // 1 / sqrt(N); NaN in ratio mode
    double cos_theta = 0.0;          // 1 - M / N
    double theta = 0.0;              // arccos(cos_theta), in (0, pi/2]

    static SearchShape from_counts(std::uint64_t list_size, std::uint64_t match_count);
    static SearchShape from_ratio(double ratio);

    bool has_counts() const noexcept { return list_size != 0; }
};

/// How many iterations to run and what to expect from them.
struct IterationPlan {
    std::int64_t iterations = 0;       // floor(pi / (2 theta))
    double exact_iterations = 0.0;     // pi / (2 theta)
    double success_probability = 0.0;  // at `iterations`
    double lower_bound = 0.0;          // guaranteed minimum at `iterations`
};

/// Location and value of a grid minimum over match ratios.
struct RatioMinimum {
    double ratio = 0.0;
    double probability = 0.0;
};

/// Chebyshev polynomial of the second kind, evaluated through its trig form
/// sin((degree+1) theta) / sin(theta) with theta = arccos(x). Defined for
/// degree >= -1 (U_{-1} = 0) and x in [0, 1]; at x == 1 the limit degree+1
/// is returned.
double chebyshev_u(std::int64_t degree, double x);

/// Closed-form amplitudes after `iterations` rounds. Requires a counts-built
/// shape (the amplitude scale is 1/sqrt(N)).
AmplitudeTriple closed_amplitudes(std::int64_t iterations, const SearchShape& shape);

/// Same amplitudes evaluated by stepping the mean-inversion recurrence from
/// the initial uniform state. Kept as an independent route to
/// closed_amplitudes.
AmplitudeTriple recurrence_amplitudes(std::int64_t iterations, const SearchShape& shape);

/// Probability of measuring a marked item after `iterations` rounds.
double success_prob(std::int64_t iterations, const SearchShape& shape);

/// Probability of measuring an unmarked item; complements success_prob to 1.
double failure_prob(std::int64_t iterations, const SearchShape& shape);

/// Single-iteration success probability as the cubic 5r - 8r^2 + 4r^3 in the
/// match ratio r in (0, 1].
double first_iteration_success(double ratio);

/// floor(pi / (2 theta)) iterations plus the probability and guarantee they
/// deliver. The count never exceeds (pi / (2 sqrt 2)) sqrt(N/M).
IterationPlan required_iterations(const SearchShape& shape);

/// Guaranteed success probability at the required iteration count:
/// (1 + cos^2 theta) / (1 + cos theta).
double success_lower_bound(const SearchShape& shape);

/// Minimum of success_prob at the required iteration count over the ratio
/// grid {k*step : k >= 1} intersected with (lo, hi]. The step must be at most
/// 1e-4 so the grid resolves the plateau boundaries.
RatioMinimum min_success_over_ratios(double step, double lo = 0.0, double hi = 1.0);

}  // namespace pdsearch
