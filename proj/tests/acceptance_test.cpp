// End-to-end acceptance suite. Each test pins one numbered contract of the
// toolkit, with its tolerance hard-coded, and prints a single PASS/FAIL line.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "pdsearch/analytic.hpp"
#include "pdsearch/circuit.hpp"
#include "pdsearch/grover.hpp"
#include "pdsearch/state_vector.hpp"
#include "pdsearch/unknown_m.hpp"
#include "test_support.hpp"

using namespace pdsearch;

namespace {

class Acceptance : public ::testing::Test {
  protected:
    void Criterion(int number, std::string summary) {
        number_ = number;
        summary_ = std::move(summary);
    }

    void TearDown() override {
        std::cout << "[CRITERION " << std::setw(2) << number_ << "] "
                  << (HasFailure() ? "FAIL" : "PASS") << ": " << summary_ << std::endl;
    }

  private:
    int number_ = 0;
    std::string summary_;
};

std::vector<std::uint64_t> log_spaced_counts(std::uint64_t total, int points) {
    std::set<std::uint64_t> counts;
    for (int k = 0; k < points; ++k) {
        const double exponent = static_cast<double>(k) / static_cast<double>(points - 1);
        const auto value = static_cast<std::uint64_t>(
            std::llround(std::pow(static_cast<double>(total), exponent)));
        counts.insert(std::clamp<std::uint64_t>(value, 1, total));
    }
    return {counts.begin(), counts.end()};
}

double ratio_grid_point(std::uint64_t k, double step) {
    return std::min(static_cast<double>(k) * step, 1.0);
}

TEST_F(Acceptance, C01_SimulatorMatchesClosedForms) {
    Criterion(1, "simulated amplitude triples equal the closed forms within 1e-9");
    for (int n = 2; n <= 10; ++n) {
        const std::uint64_t total = std::uint64_t{1} << n;
        std::vector<std::uint64_t> match_counts;
        if (n <= 6) {
            for (std::uint64_t m = 1; m <= total; ++m) {
                match_counts.push_back(m);
            }
        } else {
            match_counts = log_spaced_counts(total, 32);
        }
        for (const std::uint64_t matches : match_counts) {
            const MarkedSet marked = MarkedSet::random(n, matches, 7919 * n + matches);
            const SearchShape shape = SearchShape::from_counts(total, matches);
            const std::int64_t q_max = 2 * required_iterations(shape).iterations + 2;
            StateVector state = apply_walsh_init(new_register(n));
            for (std::int64_t q = 0; q <= q_max; ++q) {
                if (q > 0) {
                    state = apply_partial_diffusion(apply_oracle(std::move(state), marked));
                }
                const AmplitudeTriple seen = extract_amplitude_triple(state, marked);
                const AmplitudeTriple want = closed_amplitudes(q, shape);
                if (matches < total) {
                    ASSERT_NEAR(seen.unmarked, want.unmarked, 1e-9)
                        << "n " << n << " M " << matches << " q " << q;
                }
                ASSERT_NEAR(seen.marked, want.marked, 1e-9)
                    << "n " << n << " M " << matches << " q " << q;
                ASSERT_NEAR(seen.marked_flipped, want.marked_flipped, 1e-9)
                    << "n " << n << " M " << matches << " q " << q;
            }
        }
    }
}

TEST_F(Acceptance, C02_GlobalMinimumOfTheRequiredCountCurve) {
    Criterion(2, "min success over the 1e-4 ratio grid is 0.8788 +/- 0.005 at 0.2928 +/- 0.005");
    const RatioMinimum minimum = min_success_over_ratios(1e-4);
    EXPECT_NEAR(minimum.probability, 0.8788, 0.005);
    EXPECT_NEAR(minimum.ratio, 0.2928, 0.005);
}

TEST_F(Acceptance, C03_LowerBoundDominanceAndItsMinimum) {
    Criterion(3, "lower bound holds everywhere; its minimum is 2*sqrt(2)-2 at ratio 2-sqrt(2)");
    double bound_min = 2.0;
    double bound_argmin = 0.0;
    for (std::uint64_t k = 1; k <= 10000; ++k) {
        const double ratio = ratio_grid_point(k, 1e-4);
        const SearchShape shape = SearchShape::from_ratio(ratio);
        const IterationPlan plan = required_iterations(shape);
        ASSERT_LE(plan.lower_bound, plan.success_probability + 1e-12) << "ratio " << ratio;
        if (plan.lower_bound < bound_min) {
            bound_min = plan.lower_bound;
            bound_argmin = ratio;
        }
    }
    EXPECT_NEAR(bound_min, 2.0 * std::sqrt(2.0) - 2.0, 1e-6);
    EXPECT_NEAR(bound_argmin, 2.0 - std::sqrt(2.0), 2e-4);

    const double special = 2.0 - std::sqrt(2.0);
    EXPECT_NEAR(success_lower_bound(SearchShape::from_ratio(special)),
                2.0 * std::sqrt(2.0) - 2.0, 1e-12);
    EXPECT_NEAR(first_iteration_success(special), 0.9878, 1e-3);
    EXPECT_NEAR(success_prob(1, SearchShape::from_ratio(special)), 0.9878, 1e-3);
}

TEST_F(Acceptance, C04_SingleIterationPlateauAboveOneThird) {
    Criterion(4, "every grid ratio above 1/3 needs one iteration and succeeds with p >= 0.90");
    for (std::uint64_t k = 1; k <= 10000; ++k) {
        const double ratio = ratio_grid_point(k, 1e-4);
        if (ratio <= 1.0 / 3.0) {
            continue;
        }
        const SearchShape shape = SearchShape::from_ratio(ratio);
        const IterationPlan plan = required_iterations(shape);
        ASSERT_EQ(plan.iterations, 1) << "ratio " << ratio;
        ASSERT_GE(plan.success_probability, 0.90) << "ratio " << ratio;
    }
}

TEST_F(Acceptance, C05_GroverBaselineComparison) {
    Criterion(5, "Grover minimum, single-guess regime, pointwise small-ratio comparison, caps");

    // Minimum of the baseline curve over the coarse grid.
    double grover_min = 2.0;
    double grover_argmin = 0.0;
    for (std::uint64_t k = 1; k <= 10000; ++k) {
        const double ratio = ratio_grid_point(k, 1e-4);
        const GroverShape shape = GroverShape::from_ratio(ratio);
        const std::int64_t count = grover_iterations(shape);
        const double p = grover_success(count, shape);
        if (p < grover_min) {
            grover_min = p;
            grover_argmin = ratio;
        }
        // Single-guess regime: no iterations, bare base rate.
        if (ratio > 0.5) {
            ASSERT_EQ(count, 0) << "ratio " << ratio;
            ASSERT_NEAR(p, ratio, 1e-12) << "ratio " << ratio;
        }
        // Iteration caps for both algorithms.
        const double root = std::sqrt(1.0 / ratio);
        ASSERT_LE(static_cast<double>(count), std::numbers::pi / 4.0 * root + 1e-12);
        const SearchShape proposed = SearchShape::from_ratio(ratio);
        ASSERT_LE(static_cast<double>(required_iterations(proposed).iterations),
                  std::numbers::pi / (2.0 * std::sqrt(2.0)) * root + 1e-12);
    }
    EXPECT_NEAR(grover_min, 0.50, 0.005);
    EXPECT_NEAR(grover_argmin, 0.5, 0.005);

    // Pointwise comparison on the fine small-ratio grid. Note: near ratios
    // where the baseline's rounded count lands on a probability peak while
    // the proposed count lands in a trough, the baseline can exceed the
    // proposed probability by up to about ratio/2, so a strict pointwise
    // ordering does not hold; the provable pointwise relation is
    // p_proposed >= 1 - ratio, the baseline's own guarantee. Both statements
    // are checked here.
    std::uint64_t violations = 0;
    double worst_gap = 0.0;
    double worst_ratio = 0.0;
    for (std::uint64_t k = 1; k <= 1000; ++k) {
        const double ratio = static_cast<double>(k) * 1e-6;
        const SearchShape proposed = SearchShape::from_ratio(ratio);
        const double p_proposed =
            success_prob(required_iterations(proposed).iterations, proposed);
        const GroverShape grover = GroverShape::from_ratio(ratio);
        const double p_grover = grover_success(grover_iterations(grover), grover);
        ASSERT_GE(p_proposed, 1.0 - ratio - 1e-12) << "ratio " << ratio;
        if (p_proposed + 1e-12 < p_grover) {
            ++violations;
            if (p_grover - p_proposed > worst_gap) {
                worst_gap = p_grover - p_proposed;
                worst_ratio = ratio;
            }
        }
    }
    EXPECT_EQ(violations, 0u)
        << "pointwise ordering p_proposed >= p_grover fails at " << violations
        << " of 1000 small-ratio grid points; worst gap " << worst_gap << " at ratio "
        << worst_ratio;
}

TEST_F(Acceptance, C06_SuccessAndFailureProbabilitiesAreComplementary) {
    Criterion(6, "success and failure probabilities sum to 1 within 1e-12 on the test grid");
    for (std::uint64_t k = 1; k <= 10000; ++k) {
        const double ratio = ratio_grid_point(k, 1e-4);
        const SearchShape shape = SearchShape::from_ratio(ratio);
        const std::int64_t required = required_iterations(shape).iterations;
        for (const std::int64_t q :
             {std::int64_t{0}, std::int64_t{1}, required, required + 1, 2 * required + 2}) {
            ASSERT_NEAR(success_prob(q, shape) + failure_prob(q, shape), 1.0, 1e-12)
                << "ratio " << ratio << " q " << q;
        }
    }
    for (int n = 2; n <= 10; ++n) {
        const std::uint64_t total = std::uint64_t{1} << n;
        for (const std::uint64_t matches : log_spaced_counts(total, 16)) {
            const SearchShape shape = SearchShape::from_counts(total, matches);
            const std::int64_t q_max = 2 * required_iterations(shape).iterations + 2;
            for (std::int64_t q = 0; q <= q_max; ++q) {
                ASSERT_NEAR(success_prob(q, shape) + failure_prob(q, shape), 1.0, 1e-12)
                    << "N " << total << " M " << matches << " q " << q;
            }
        }
    }
}

TEST_F(Acceptance, C07_AveragedSuccessClosedForms) {
    Criterion(7, "window sums and averaged success match brute force; critical floor 0.2725");
    const std::vector<double> thetas = {0.01, 0.05,        0.1, 0.3, 0.7,
                                        1.0,  1.3,         std::numbers::pi / 2.0};
    for (const double theta : thetas) {
        test::KahanSum brute;
        for (std::int64_t m = 1; m <= 500; ++m) {
            const double next = std::sin(static_cast<double>(m) * theta);
            const double curr = std::sin(static_cast<double>(m - 1) * theta);
            brute.add(next * next + curr * curr);
            ASSERT_NEAR(sin_squared_pair_sum(m, theta), brute.value(), 1e-12)
                << "m " << m << " theta " << theta;
        }
    }

    for (const auto& [exponent, matches] :
         std::vector<std::pair<int, std::uint64_t>>{{6, 5}, {10, 1}, {12, 17}}) {
        const SearchShape shape =
            SearchShape::from_counts(std::uint64_t{1} << exponent, matches);
        test::KahanSum mean;
        for (std::int64_t m = 1; m <= 500; ++m) {
            mean.add(success_prob(m - 1, shape));
            ASSERT_NEAR(average_success_prob(m, shape),
                        mean.value() / static_cast<double>(m), 1e-12)
                << "m " << m << " N " << shape.list_size << " M " << matches;
        }
    }

    for (const auto& [exponent, matches] : std::vector<std::pair<int, std::uint64_t>>{
             {12, 1}, {12, 4}, {16, 1}, {16, 64}, {20, 1}, {20, 1000}}) {
        const SearchShape shape =
            SearchShape::from_counts(std::uint64_t{1} << exponent, matches);
        ASSERT_LE(shape.ratio, 1e-3);
        const auto critical =
            static_cast<std::int64_t>(std::ceil(1.0 / std::sin(shape.theta)));
        for (std::int64_t m = critical; m <= critical + 2000; ++m) {
            ASSERT_GT(average_success_prob(m, shape), 0.2725)
                << "m " << m << " N " << shape.list_size << " M " << matches;
        }
    }
}

TEST_F(Acceptance, C08_UnknownCountMonteCarlo) {
    Criterion(8, "randomized driver: all runs succeed, mean cost under 1.10 * 6.4 / sin(theta)");
    constexpr int kRunsPerCell = 5000;

    for (const int n : {8, 12}) {
        const std::uint64_t total = std::uint64_t{1} << n;
        const std::vector<std::uint64_t> match_grid = {
            1, 3, total / 4, total / 2, 3 * total / 4, total};
        for (const std::uint64_t matches : match_grid) {
            const MarkedSet marked = MarkedSet::random(n, matches, 40503 + matches);
            const SearchShape shape = SearchShape::from_counts(total, matches);
            const std::uint64_t base_seed = 100000ull * n + matches;

            std::vector<RunRecord> records(kRunsPerCell);
            const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (int i = static_cast<int>(w); i < kRunsPerCell;
                         i += static_cast<int>(workers)) {
                        DriverConfig config;
                        config.seed = base_seed + static_cast<std::uint64_t>(i);
                        records[i] = run_unknown_m(n, marked, config);
                    }
                });
            }
            for (auto& worker : pool) {
                worker.join();
            }

            double iteration_sum = 0.0;
            for (const RunRecord& record : records) {
                ASSERT_TRUE(record.found_index.has_value())
                    << "N " << total << " M " << matches << " seed " << record.seed;
                ASSERT_TRUE(marked.contains(*record.found_index))
                    << "N " << total << " M " << matches << " seed " << record.seed;
                iteration_sum += static_cast<double>(record.total_iterations);
            }
            const double mean = iteration_sum / kRunsPerCell;
            const double budget = 1.10 * 6.4 / std::sin(shape.theta);
            EXPECT_LE(mean, budget) << "N " << total << " M " << matches;

            // Beyond three quarters the baseline cost model is out of range
            // while this driver still finishes every run.
            const auto grover_cost =
                expected_cost_grover(GroverShape::from_counts(total, matches));
            if (matches > 3 * total / 4) {
                EXPECT_FALSE(grover_cost.has_value()) << "M " << matches;
            } else {
                EXPECT_TRUE(grover_cost.has_value()) << "M " << matches;
            }
        }
    }
}

TEST_F(Acceptance, C09_CircuitDecompositionIsExact) {
    Criterion(9, "gate-level diffusion equals its operator and kernel within 1e-12 for n in 1..8");
    for (int n = 1; n <= 8; ++n) {
        EXPECT_LE(verify_partial_diffusion(n), 1e-12) << "n " << n;
    }
}

TEST_F(Acceptance, C10_OracleAndDiffusionAreInvolutions) {
    Criterion(10, "oracle and partial diffusion square to the identity within 1e-12");
    for (int n = 2; n <= 10; ++n) {
        const std::uint64_t total = std::uint64_t{1} << n;
        for (const std::uint64_t seed : {std::uint64_t{1}, std::uint64_t{2}}) {
            const StateVector state = test::random_real_state(n, 1000 + seed);
            const MarkedSet marked = MarkedSet::random(n, total / 3 + 1, seed);

            const StateVector oracle_twice =
                apply_oracle(apply_oracle(state, marked), marked);
            const StateVector diffusion_twice =
                apply_partial_diffusion(apply_partial_diffusion(state));
            for (std::size_t pos = 0; pos < state.dimension(); ++pos) {
                ASSERT_NEAR(std::abs(oracle_twice[pos] - state[pos]), 0.0, 1e-12)
                    << "n " << n << " pos " << pos;
                ASSERT_NEAR(std::abs(diffusion_twice[pos] - state[pos]), 0.0, 1e-12)
                    << "n " << n << " pos " << pos;
            }
        }
    }
}

}  // namespace
