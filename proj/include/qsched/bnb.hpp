#ifndef QSCHED_BNB_HPP
#define QSCHED_BNB_HPP

#include <qsched/model.hpp>

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>

namespace qsched {

enum class PruneMode
{
    /// Prune when the scalarized bound cannot beat the incumbent scalar.
    scalar,
    /// Keep a child only if all three bounds are strictly below the incumbent's
    /// (time, cost, load); accept leaves that improve all three. Not exact for
    /// the weighted objective.
    paper_literal,
    /// No bound pruning (cap pruning still applies). For testing.
    none,
};

enum class BranchOrder
{
    input,
    /// Descending by minimum task_time over all VMs; stable on ties.
    longest_task_first,
};

struct LowerBounds
{
    double time = 0.0;
    double cost = 0.0;
    double load = 0.0;
    double scalar = 0.0;
};

/// A search node: tasks 0..depth-1 of the search instance are fixed.
struct BnbNode
{
    std::size_t depth = 0;
    Assignment partial;
    double lb_time = 0.0;
    double lb_cost = 0.0;
    double lb_load = 0.0;
    double lb_scalar = 0.0;
};

/// Instrumentation callbacks. The node hook sees the instance in branch order.
struct BnbHooks
{
    std::function<void(const Instance& search_instance, const BnbNode& node)> on_node;
    std::function<void(const Evaluation& incumbent)> on_incumbent;
};

struct BnbConfig
{
    PruneMode prune_mode = PruneMode::scalar;
    std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
    double time_budget = std::numeric_limits<double>::infinity(); ///< seconds
    BranchOrder branch_order = BranchOrder::input;
    /// Seed the incumbent with a greedy assignment before searching.
    bool warm_start = false;
    BnbHooks hooks;
};

struct BnbResult
{
    std::optional<Assignment> best;
    Evaluation eval;
    std::uint64_t nodes_expanded = 0;
    std::uint64_t pruned = 0;
    bool proven_optimal = false;

    /// The search finished and found no assignment respecting the caps.
    bool infeasible() const noexcept { return proven_optimal && !best; }
};

/**
 * Admissible bounds for every completion of node.partial (a prefix of the
 * task list).
 *
 *  - time: the largest of the partial makespan, the water-filling level that
 *    absorbs every unassigned task's cheapest processing time on top of the
 *    current machine totals, and min_i(total_i + P_ij) for each unassigned j.
 *  - cost: partial cost plus each unassigned task's cheapest C_ij.
 *  - load: the partial load (utilization only grows with more tasks).
 *
 * At depth == n the bounds equal evaluate() exactly.
 */
LowerBounds lower_bound(const Instance& instance, const BnbNode& node);

/**
 * Depth-first branch and bound over task -> VM decisions.
 *
 * Children are the m VM choices for the next task, visited in ascending
 * order of their scalar bound (VM index breaks ties). Leaves that violate a
 * cap are rejected; nodes whose time or cost bound already exceeds a cap are
 * pruned in every mode.
 */
BnbResult solve_bnb(const Instance& instance, const BnbConfig& config = {});

} // namespace qsched

#endif
