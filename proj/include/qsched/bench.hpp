#ifndef QSCHED_BENCH_HPP
#define QSCHED_BENCH_HPP

#include <qsched/bnb.hpp>
#include <qsched/ga.hpp>
#include <qsched/oracle.hpp>
#include <qsched/workload.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qsched {

/// One (solver, n, seed) cell. `status` is one of ok, infeasible, too_large,
/// skipped, error.
struct BenchRecord
{
    std::size_t n_tasks = 0;
    std::string solver;
    double time_objective = 0.0;
    double cost_objective = 0.0;
    double load_objective = 0.0;
    double scalar = 0.0;
    double wall_clock_ms = 0.0;
    std::uint64_t nodes_or_generations = 0;
    std::uint64_t seed = 0;
    bool proven_optimal = false;
    std::string status = "ok";

    bool operator==(const BenchRecord&) const = default;
};

/// Header line of the results CSV, without the trailing newline.
inline constexpr std::string_view kBenchCsvHeader =
    "n_tasks,solver,time_objective,cost_objective,load_objective,scalar,wall_clock_ms,"
    "nodes_or_generations,seed,proven_optimal,status";

struct BenchOptions
{
    std::vector<std::size_t> task_counts;
    std::vector<std::string> solvers; ///< any of bnb, ga, brute
    std::size_t seeds = 5;
    std::uint64_t base_seed = 0;       ///< cell seeds are base_seed + k
    Preset preset = preset_table2();
    QosWeights weights;
    bool normalize = false;            ///< divide objectives by their round-robin values
    std::size_t bnb_max_tasks = 12;
    BnbConfig bnb;
    GaParams ga;                       ///< seed is overridden per cell
    std::uint64_t brute_guard = kDefaultEnumerationGuard;
    std::size_t jobs = 1;
};

/// Throws invalid_argument_error for an unknown solver name or empty lists.
void validate(const BenchOptions& options);

/// The instance a cell runs on. Shared by every solver at the same (n, seed).
Instance bench_instance(const BenchOptions& options, std::size_t n, std::uint64_t seed);

/// Runs every cell; rows come back ordered by (n, solver order, seed) whatever `jobs` is.
std::vector<BenchRecord> run_bench(const BenchOptions& options);

std::string bench_to_csv(const std::vector<BenchRecord>& records);

/// Strict parser: header must match kBenchCsvHeader. Throws parse_error.
std::vector<BenchRecord> bench_from_csv(std::string_view text);

struct BenchCharts
{
    std::string time_svg;
    std::string cost_svg;
    std::string load_svg;
};

/**
 * Line charts of each objective against n: one series per solver, the mean
 * over seeds with min/max whiskers. Only rows with status ok are plotted.
 * Pure function of the CSV text.
 */
BenchCharts render_charts(std::string_view csv);

} // namespace qsched

#endif
