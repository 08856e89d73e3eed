#include "pdsearch/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace pdsearch {

namespace {

bool is_power_of_two(std::uint64_t value) {
    return value != 0 && (value & (value - 1)) == 0;
}

void require_counts(const SearchShape& shape, const char* what) {
    if (!shape.has_counts()) {
        throw DomainError(std::string(what) + " needs a counts-built shape; "
                          "a bare ratio has no amplitude scale");
    }
}

void require_nonnegative(std::int64_t iterations) {
    if (iterations < 0) {
        throw DomainError("iteration count must be nonnegative, got " +
                          std::to_string(iterations));
    }
}

}  // namespace

SearchShape SearchShape::from_counts(std::uint64_t list_size, std::uint64_t match_count) {
    if (!is_power_of_two(list_size) || list_size < 2) {
        throw DomainError("list size must be a power of two >= 2, got " +
                          std::to_string(list_size));
    }
    if (match_count < 1 || match_count > list_size) {
        throw DomainError("match count must be in [1, N], got " + std::to_string(match_count));
    }
    SearchShape shape;
    shape.list_size = list_size;
    shape.match_count = match_count;
    shape.ratio = static_cast<double>(match_count) / static_cast<double>(list_size);
    shape.uniform_amplitude = 1.0 / std::sqrt(static_cast<double>(list_size));
    shape.cos_theta =
        static_cast<double>(list_size - match_count) / static_cast<double>(list_size);
    shape.theta = std::acos(std::clamp(shape.cos_theta, -1.0, 1.0));
    return shape;
}

SearchShape SearchShape::from_ratio(double ratio) {
    if (!(ratio > 0.0 && ratio <= 1.0)) {
        throw DomainError("match ratio must lie in (0, 1], got " + std::to_string(ratio));
    }
    SearchShape shape;
    shape.ratio = ratio;
    shape.uniform_amplitude = std::numeric_limits<double>::quiet_NaN();
    shape.cos_theta = 1.0 - ratio;
    shape.theta = std::acos(std::clamp(shape.cos_theta, -1.0, 1.0));
    return shape;
}

double chebyshev_u(std::int64_t degree, double x) {
    if (degree < -1) {
        throw DomainError("Chebyshev degree must be >= -1, got " + std::to_string(degree));
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("Chebyshev argument must lie in [0, 1], got " + std::to_string(x));
    }
    const double theta = std::acos(x);
    const double denom = std::sin(theta);
    if (denom == 0.0) {
        return static_cast<double>(degree + 1);
    }
    return std::sin(static_cast<double>(degree + 1) * theta) / denom;
}

AmplitudeTriple closed_amplitudes(std::int64_t iterations, const SearchShape& shape) {
    require_nonnegative(iterations);
    require_counts(shape, "closed_amplitudes");
    const double scale = shape.uniform_amplitude;
    const double u_now = chebyshev_u(iterations, shape.cos_theta);
    const double u_prev = chebyshev_u(iterations - 1, shape.cos_theta);
    return AmplitudeTriple{
        .unmarked = scale * (u_now - u_prev),
        .marked = scale * u_now,
        .marked_flipped = -scale * u_prev,
        .iteration = iterations,
    };
}

AmplitudeTriple recurrence_amplitudes(std::int64_t iterations, const SearchShape& shape) {
    require_nonnegative(iterations);
    require_counts(shape, "recurrence_amplitudes");
    const double y = shape.cos_theta;
    double unmarked = shape.uniform_amplitude;
    double marked = shape.uniform_amplitude;
    double flipped = 0.0;
    for (std::int64_t step = 1; step <= iterations; ++step) {
        const double mean = y * unmarked + (1.0 - y) * flipped;
        const double next_unmarked = 2.0 * mean - unmarked;
        const double next_marked = 2.0 * mean - flipped;
        const double next_flipped = -marked;
        unmarked = next_unmarked;
        marked = next_marked;
        flipped = next_flipped;
    }
    return AmplitudeTriple{unmarked, marked, flipped, iterations};
}

double success_prob(std::int64_t iterations, const SearchShape& shape) {
    require_nonnegative(iterations);
    const double u_now = chebyshev_u(iterations, shape.cos_theta);
    const double u_prev = chebyshev_u(iterations - 1, shape.cos_theta);
    return (1.0 - shape.cos_theta) * (u_now * u_now + u_prev * u_prev);
}

double failure_prob(std::int64_t iterations, const SearchShape& shape) {
    require_nonnegative(iterations);
    const double u_now = chebyshev_u(iterations, shape.cos_theta);
    const double u_prev = chebyshev_u(iterations - 1, shape.cos_theta);
    const double diff = u_now - u_prev;
    return shape.cos_theta * diff * diff;
}

double first_iteration_success(double ratio) {
    if (!(ratio > 0.0 && ratio <= 1.0)) {
        throw DomainError("match ratio must lie in (0, 1], got " + std::to_string(ratio));
    }
    return ratio * (5.0 + ratio * (-8.0 + 4.0 * ratio));
}

IterationPlan required_iterations(const SearchShape& shape) {
    IterationPlan plan;
    plan.exact_iterations = std::numbers::pi / (2.0 * shape.theta);
    plan.iterations = static_cast<std::int64_t>(std::floor(plan.exact_iterations));
    const double cap = std::numbers::pi / (2.0 * std::sqrt(2.0)) / std::sqrt(shape.ratio);
    if (static_cast<double>(plan.iterations) > cap) {
        throw InvariantError("required iteration count exceeds its O(sqrt(N/M)) cap");
    }
    plan.success_probability = success_prob(plan.iterations, shape);
    plan.lower_bound = success_lower_bound(shape);
    return plan;
}

double success_lower_bound(const SearchShape& shape) {
    const double y = shape.cos_theta;
    return (1.0 + y * y) / (1.0 + y);
}

RatioMinimum min_success_over_ratios(double step, double lo, double hi) {
    if (!(step > 0.0 && step <= 1e-4)) {
        throw DomainError("grid step must lie in (0, 1e-4], got " + std::to_string(step));
    }
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw DomainError("ratio window must satisfy 0 <= lo < hi <= 1");
    }
    const auto first = static_cast<std::uint64_t>(std::floor(lo / step + 1e-9)) + 1;
    const auto last = static_cast<std::uint64_t>(std::floor(hi / step + 1e-9));
    RatioMinimum best{0.0, std::numeric_limits<double>::infinity()};
    for (std::uint64_t k = first; k <= last; ++k) {
        const double ratio = std::min(static_cast<double>(k) * step, 1.0);
        if (ratio <= lo) {
            continue;
        }
        const SearchShape shape = SearchShape::from_ratio(ratio);
        const double p = success_prob(required_iterations(shape).iterations, shape);
        if (p < best.probability) {
            best = {ratio, p};
        }
    }
    return best;
}

}  // namespace pdsearch
