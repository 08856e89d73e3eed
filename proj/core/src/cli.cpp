#include "pdsearch/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <locale>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pdsearch/analytic.hpp"
#include "pdsearch/circuit.hpp"
#include "pdsearch/errors.hpp"
#include "pdsearch/grover.hpp"
#include "pdsearch/state_vector.hpp"
#include "pdsearch/unknown_m.hpp"

namespace pdsearch::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kCircuitTol = 1e-12;

/// Bad flag values discovered after CLI11 parsing; maps to kExitUsage.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string format_double(double value) {
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

unsigned thread_count() {
    if (const char* env = std::getenv("PDSEARCH_THREADS")) {
        unsigned parsed = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::string_view(env).size(), parsed);
        if (ec == std::errc{} && *ptr == '\0' && parsed >= 1) {
            return parsed;
        }
        throw UsageError("PDSEARCH_THREADS must be a positive integer");
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void write_output(const std::string& payload, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("cannot open output file: " + path);
    }
    file << payload;
}

MarkedSet parse_marked_spec(int index_qubits, const std::string& spec, std::uint64_t seed) {
    if (spec == "all") {
        return MarkedSet::all(index_qubits);
    }
    if (spec.rfind("random:", 0) == 0) {
        const std::string count_text = spec.substr(7);
        std::uint64_t count = 0;
        const auto [ptr, ec] =
            std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
        if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
            throw UsageError("bad marked spec, expected random:<count>: " + spec);
        }
        return MarkedSet::random(index_qubits, count, seed);
    }
    std::vector<std::uint64_t> items;
    std::size_t begin = 0;
    while (begin <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', begin), spec.size());
        std::uint64_t item = 0;
        const auto [ptr, ec] = std::from_chars(spec.data() + begin, spec.data() + comma, item);
        if (ec != std::errc{} || ptr != spec.data() + comma) {
            throw UsageError("bad marked spec, expected all, random:<count> or a "
                             "comma-separated index list: " +
                             spec);
        }
        items.push_back(item);
        begin = comma + 1;
    }
    return MarkedSet(index_qubits, std::move(items));
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
    int index_qubits = 0;
    std::string marked_spec;
    std::string iteration_spec = "auto";
    std::uint64_t marked_seed = 0;
    std::string out_path;
};

std::string run_simulate(const SimulateOptions& opt) {
    const MarkedSet marked =
        parse_marked_spec(opt.index_qubits, opt.marked_spec, opt.marked_seed);
    const std::uint64_t list_size = marked.item_count();
    const std::uint64_t match_count = marked.match_count();

    std::optional<SearchShape> shape;
    if (match_count >= 1) {
        shape = SearchShape::from_counts(list_size, match_count);
    }

    std::int64_t iterations = 0;
    if (opt.iteration_spec == "auto") {
        if (!shape) {
            throw DomainError("--q auto needs at least one marked item");
        }
        iterations = required_iterations(*shape).iterations;
    } else {
        const auto* begin = opt.iteration_spec.data();
        const auto* end = begin + opt.iteration_spec.size();
        const auto [ptr, ec] = std::from_chars(begin, end, iterations);
        if (ec != std::errc{} || ptr != end || iterations < 0) {
            throw UsageError("--q expects a nonnegative integer or auto, got " +
                             opt.iteration_spec);
        }
    }

    const StateVector state = run_search(opt.index_qubits, marked, iterations);
    const AmplitudeTriple triple = extract_amplitude_triple(state, marked);

    ordered_json doc;
    doc["n"] = opt.index_qubits;
    doc["N"] = list_size;
    doc["M"] = match_count;
    doc["q"] = iterations;
    doc["p_success_sim"] = success_probability(state, marked);
    if (shape) {
        doc["p_success_analytic"] = success_prob(iterations, *shape);
    } else {
        doc["p_success_analytic"] = nullptr;
    }
    doc["triple"] = {{"a", triple.unmarked}, {"b", triple.marked}, {"c", triple.marked_flipped}};
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    std::string mode = "compare";
    std::string out_path;
};

std::string run_sweep(const SweepOptions& opt) {
    if (!(opt.start > 0.0 && opt.start <= opt.stop && opt.stop <= 1.0 && opt.step > 0.0)) {
        throw UsageError("sweep grid must satisfy 0 < start <= stop <= 1 and step > 0");
    }
    std::ostringstream csv;
    csv.imbue(std::locale::classic());
    csv << "ratio,q,p_proposed,p_lower_bound,q_grover,p_grover\n";
    const auto count =
        static_cast<std::uint64_t>(std::floor((opt.stop - opt.start) / opt.step + 1e-9));
    for (std::uint64_t k = 0; k <= count; ++k) {
        const double ratio =
            std::min(opt.start + static_cast<double>(k) * opt.step, 1.0);
        const SearchShape shape = SearchShape::from_ratio(ratio);
        const IterationPlan plan = required_iterations(shape);
        const GroverShape grover = GroverShape::from_ratio(ratio);
        const std::int64_t grover_count = grover_iterations(grover);
        csv << format_double(ratio) << ',' << plan.iterations << ','
            << format_double(plan.success_probability) << ','
            << format_double(plan.lower_bound) << ',' << grover_count << ','
            << format_double(grover_success(grover_count, grover)) << '\n';
    }
    return csv.str();
}

// ---------------------------------------------------------------------------
// unknown-m

struct UnknownMOptions {
    int index_qubits = 0;
    std::uint64_t match_count = 0;
    std::uint64_t runs = 1;
    std::uint64_t seed = 0;
    double growth = 8.0 / 7.0;
    std::string out_path;
    std::string summary_path;
};

std::vector<RunRecord> collect_runs(int index_qubits, const MarkedSet& marked,
                                    const UnknownMOptions& opt) {
    std::vector<RunRecord> records(opt.runs);
    const auto run_one = [&](std::uint64_t index) {
        DriverConfig config;
        config.growth = opt.growth;
        config.seed = opt.seed + index;
        records[index] = run_unknown_m(index_qubits, marked, config);
    };

    const auto threads =
        static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), opt.runs));
    if (threads <= 1) {
        for (std::uint64_t i = 0; i < opt.runs; ++i) {
            run_one(i);
        }
        return records;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::uint64_t i = t; i < opt.runs; i += threads) {
                    run_one(i);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& worker : pool) {
        worker.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
    std::ostringstream csv;
    csv.imbue(std::locale::classic());
    csv << "run,seed,rounds,total_iterations,oracle_calls,found\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const RunRecord& rec = records[i];
        csv << i << ',' << rec.seed << ',' << rec.rounds << ',' << rec.total_iterations << ','
            << rec.oracle_calls << ',';
        if (rec.found_index) {
            csv << *rec.found_index;
        }
        csv << '\n';
    }
    return csv.str();
}

ordered_json cost_curves() {
    // The step-function view of both cost models over a ratio grid.
    ordered_json curves = ordered_json::array();
    for (int k = 1; k <= 100; ++k) {
        const double ratio = static_cast<double>(k) / 100.0;
        const SearchShape shape = SearchShape::from_ratio(ratio);
        const GroverShape grover = GroverShape::from_ratio(ratio);
        ordered_json row;
        row["ratio"] = ratio;
        row["proposed"] =
            static_cast<std::uint64_t>(std::floor(6.4 / std::sin(shape.theta)));
        if (const auto grover_cost = expected_cost_grover(grover)) {
            row["grover"] = static_cast<std::uint64_t>(std::floor(*grover_cost));
        } else {
            row["grover"] = nullptr;
        }
        curves.push_back(std::move(row));
    }
    return curves;
}

std::string summarize_runs(const std::vector<RunRecord>& records, const UnknownMOptions& opt) {
    const std::uint64_t list_size = std::uint64_t{1} << opt.index_qubits;
    const SearchShape shape = SearchShape::from_counts(list_size, opt.match_count);
    const GroverShape grover = GroverShape::from_counts(list_size, opt.match_count);

    double rounds = 0.0;
    double iterations = 0.0;
    double oracle_calls = 0.0;
    std::uint64_t successes = 0;
    for (const RunRecord& rec : records) {
        rounds += static_cast<double>(rec.rounds);
        iterations += static_cast<double>(rec.total_iterations);
        oracle_calls += static_cast<double>(rec.oracle_calls);
        successes += rec.found_index.has_value() ? 1 : 0;
    }
    const auto runs = static_cast<double>(records.size());

    ordered_json doc;
    doc["n"] = opt.index_qubits;
    doc["N"] = list_size;
    doc["M"] = opt.match_count;
    doc["runs"] = records.size();
    doc["base_seed"] = opt.seed;
    doc["lambda"] = opt.growth;
    doc["success_rate"] = static_cast<double>(successes) / runs;
    doc["mean_rounds"] = rounds / runs;
    doc["mean_total_iterations"] = iterations / runs;
    doc["mean_oracle_calls"] = oracle_calls / runs;
    doc["predicted_total_proposed"] = 6.4 / std::sin(shape.theta);
    if (const auto grover_cost = expected_cost_grover(grover)) {
        doc["predicted_total_grover"] = *grover_cost;
        doc["grover_in_validity_range"] = true;
    } else {
        doc["predicted_total_grover"] = nullptr;
        doc["grover_in_validity_range"] = false;
    }
    doc["curves"] = cost_curves();
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// circuit-check

struct CircuitCheckOptions {
    int index_qubits = 0;
    std::string emit_gates_path;
    std::string out_path;
};

// ---------------------------------------------------------------------------
// analytic

struct AnalyticOptions {
    std::uint64_t list_size = 0;
    std::uint64_t match_count = 0;
    std::string out_path;
};

std::string run_analytic(const AnalyticOptions& opt) {
    const SearchShape shape = SearchShape::from_counts(opt.list_size, opt.match_count);
    const IterationPlan plan = required_iterations(shape);
    ordered_json doc;
    doc["N"] = shape.list_size;
    doc["M"] = shape.match_count;
    doc["ratio"] = shape.ratio;
    doc["s"] = shape.uniform_amplitude;
    doc["y"] = shape.cos_theta;
    doc["theta"] = shape.theta;
    doc["q"] = plan.iterations;
    doc["q_exact"] = plan.exact_iterations;
    doc["p_success"] = plan.success_probability;
    doc["p_lower_bound"] = plan.lower_bound;
    return doc.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulator and analytic toolkit for partial-diffusion quantum search"};
    app.require_subcommand(1);

    SimulateOptions simulate_opt;
    auto* simulate_cmd =
        app.add_subcommand("simulate", "Run the search on a dense statevector");
    simulate_cmd->add_option("--n", simulate_opt.index_qubits, "Index register qubits")
        ->required();
    simulate_cmd
        ->add_option("--marked", simulate_opt.marked_spec,
                     "Marked items: all, random:<count> or a comma-separated index list")
        ->required();
    simulate_cmd->add_option("--q", simulate_opt.iteration_spec,
                             "Iteration count, or auto for the required count");
    simulate_cmd->add_option("--marked-seed", simulate_opt.marked_seed,
                             "Seed for random marked placement");
    simulate_cmd->add_option("--out", simulate_opt.out_path, "Write the JSON report here");

    SweepOptions sweep_opt;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Tabulate both algorithms over a match-ratio grid");
    sweep_cmd->add_option("--start", sweep_opt.start, "First ratio, in (0, 1]")->required();
    sweep_cmd->add_option("--stop", sweep_opt.stop, "Last ratio, in (0, 1]")->required();
    sweep_cmd->add_option("--step", sweep_opt.step, "Grid step")->required();
    sweep_cmd
        ->add_option("--mode", sweep_opt.mode,
                     "proposed or compare; the column set is fixed either way")
        ->check(CLI::IsMember({"proposed", "compare"}));
    sweep_cmd->add_option("--out", sweep_opt.out_path, "Write the CSV here");

    UnknownMOptions unknown_opt;
    auto* unknown_cmd = app.add_subcommand(
        "unknown-m", "Monte Carlo of the randomized driver for unknown match counts");
    unknown_cmd->add_option("--n", unknown_opt.index_qubits, "Index register qubits")
        ->required();
    unknown_cmd
        ->add_option("--m", unknown_opt.match_count,
                     "Match count; items 0..m-1 are marked")
        ->required();
    unknown_cmd->add_option("--runs", unknown_opt.runs, "Number of seeded runs");
    unknown_cmd->add_option("--seed", unknown_opt.seed,
                            "Base seed; run i uses seed + i");
    unknown_cmd->add_option("--lambda", unknown_opt.growth,
                            "Window growth factor, in (1, 4/3]");
    unknown_cmd->add_option("--out", unknown_opt.out_path, "Write the per-run CSV here");
    unknown_cmd->add_option("--summary", unknown_opt.summary_path,
                            "Write the summary JSON here");

    CircuitCheckOptions circuit_opt;
    auto* circuit_cmd = app.add_subcommand(
        "circuit-check", "Check the gate-level diffusion circuit against its operator");
    circuit_cmd->add_option("--n", circuit_opt.index_qubits, "Index register qubits (1..8)")
        ->required();
    circuit_cmd->add_option("--emit-gates", circuit_opt.emit_gates_path,
                            "Also write the gate list JSON here");
    circuit_cmd->add_option("--out", circuit_opt.out_path, "Write the JSON report here");

    AnalyticOptions analytic_opt;
    auto* analytic_cmd =
        app.add_subcommand("analytic", "Print the closed-form plan for a given N and M");
    analytic_cmd->add_option("--N", analytic_opt.list_size, "List size, a power of two")
        ->required();
    analytic_cmd->add_option("--M", analytic_opt.match_count, "Match count")->required();
    analytic_cmd->add_option("--out", analytic_opt.out_path, "Write the JSON report here");

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("pdsearch");
        for (const std::string& arg : args) {
            argv.push_back(arg.c_str());
        }
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (simulate_cmd->parsed()) {
            write_output(run_simulate(simulate_opt), simulate_opt.out_path, out);
        } else if (sweep_cmd->parsed()) {
            write_output(run_sweep(sweep_opt), sweep_opt.out_path, out);
        } else if (unknown_cmd->parsed()) {
            if (unknown_opt.runs < 1) {
                throw UsageError("--runs must be at least 1");
            }
            std::vector<std::uint64_t> first_items(unknown_opt.match_count);
            std::iota(first_items.begin(), first_items.end(), 0);
            const MarkedSet marked(unknown_opt.index_qubits, std::move(first_items));
            if (marked.match_count() == 0) {
                throw DomainError("unknown-m needs at least one marked item");
            }
            const std::vector<RunRecord> records =
                collect_runs(unknown_opt.index_qubits, marked, unknown_opt);
            write_output(records_to_csv(records), unknown_opt.out_path, out);
            write_output(summarize_runs(records, unknown_opt), unknown_opt.summary_path, out);
        } else if (circuit_cmd->parsed()) {
            const double deviation = verify_partial_diffusion(circuit_opt.index_qubits);
            const bool pass = deviation <= kCircuitTol;
            if (!circuit_opt.emit_gates_path.empty()) {
                write_output(
                    gatelist_to_json(build_partial_diffusion_circuit(circuit_opt.index_qubits)),
                    circuit_opt.emit_gates_path, out);
            }
            ordered_json doc;
            doc["n"] = circuit_opt.index_qubits;
            doc["max_deviation"] = deviation;
            doc["tolerance"] = kCircuitTol;
            doc["pass"] = pass;
            write_output(doc.dump(2) + "\n", circuit_opt.out_path, out);
            if (!pass) {
                err << "circuit-check: FAIL (deviation " << format_double(deviation) << ")\n";
                return kExitInvariant;
            }
        } else if (analytic_cmd->parsed()) {
            write_output(run_analytic(analytic_opt), analytic_opt.out_path, out);
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvariantError& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const SizeError& e) {
        err << "size error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ShapeError& e) {
        err << "shape error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

}  // namespace pdsearch::cli
