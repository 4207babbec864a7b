#include <qsched/bnb.hpp>
#include <qsched/errors.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace qsched {

namespace {

constexpr double kPruneEpsilon = 1e-12;
constexpr double kCapSlack = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Smallest level T with sum_i max(0, T - busy_i) >= work.
double water_level(std::vector<double> busy, double work)
{
    std::sort(busy.begin(), busy.end());
    double filled = 0.0;
    for (std::size_t k = 0; k < busy.size(); ++k) {
        filled += busy[k];
        const double level = (filled + work) / double(k + 1);
        if (k + 1 == busy.size() || level <= busy[k + 1]) {
            return level;
        }
    }
    return 0.0;
}

/**
 * Per-machine running totals for a prefix of the task list, plus the
 * suffix sums that the bounds need. Updates are done by save/restore of the
 * touched machine so that backtracking is exact.
 */
class PartialState
{
public:
    explicit PartialState(const Instance& instance)
        : instance_(instance),
          tables_(instance),
          busy_(instance.vm_count(), 0.0),
          cpu_(instance.vm_count(), 0.0),
          mem_(instance.vm_count(), 0.0),
          comm_(instance.vm_count(), 0.0),
          load_(instance.vm_count(), 0.0),
          suffix_time_(instance.task_count() + 1, 0.0),
          suffix_cost_(instance.task_count() + 1, 0.0)
    {
        for (std::size_t j = instance.task_count(); j-- > 0;) {
            suffix_time_[j] = suffix_time_[j + 1] + tables_.min_time(j);
            suffix_cost_[j] = suffix_cost_[j + 1] + tables_.min_cost(j);
        }
    }

    struct Saved
    {
        std::size_t vm;
        double busy, cpu, mem, comm, load, cost;
    };

    Saved apply(std::size_t task, std::size_t vm)
    {
        Saved s{vm, busy_[vm], cpu_[vm], mem_[vm], comm_[vm], load_[vm], cost_};
        const auto& t = instance_.tasks[task];
        busy_[vm] += tables_.time(vm, task);
        cpu_[vm] += t.req_cpu;
        mem_[vm] += t.req_mem;
        comm_[vm] += t.req_comm;
        cost_ += tables_.cost(vm, task);
        load_[vm] = machine_load(
            utilization_from_demand(instance_.vms[vm], cpu_[vm], mem_[vm], comm_[vm]),
            instance_.weights);
        return s;
    }

    void restore(const Saved& s)
    {
        busy_[s.vm] = s.busy;
        cpu_[s.vm] = s.cpu;
        mem_[s.vm] = s.mem;
        comm_[s.vm] = s.comm;
        load_[s.vm] = s.load;
        cost_ = s.cost;
    }

    /// Bounds for the state where tasks [0, depth) are placed.
    LowerBounds bounds(std::size_t depth) const
    {
        const std::size_t m = instance_.vm_count();
        const std::size_t n = instance_.task_count();
        LowerBounds b;
        b.time = *std::max_element(busy_.begin(), busy_.end());
        if (depth < n) {
            b.time = std::max(b.time, water_level(busy_, suffix_time_[depth]));
            for (std::size_t j = depth; j < n; ++j) {
                double best = kInf;
                for (std::size_t i = 0; i < m; ++i) {
                    best = std::min(best, busy_[i] + tables_.time(i, j));
                }
                b.time = std::max(b.time, best);
            }
        }
        b.cost = cost_ + suffix_cost_[depth];
        b.load = *std::max_element(load_.begin(), load_.end());
        b.scalar = scalarize(b.time, b.cost, b.load, instance_.weights, instance_.scales);
        return b;
    }

    /// Objectives of the placed tasks only, ignoring what remains.
    LowerBounds partial_objectives() const
    {
        LowerBounds b;
        b.time = *std::max_element(busy_.begin(), busy_.end());
        b.cost = cost_;
        b.load = *std::max_element(load_.begin(), load_.end());
        b.scalar = scalarize(b.time, b.cost, b.load, instance_.weights, instance_.scales);
        return b;
    }

    const CostTables& tables() const { return tables_; }

private:
    const Instance& instance_;
    CostTables tables_;
    std::vector<double> busy_, cpu_, mem_, comm_, load_;
    double cost_ = 0.0;
    std::vector<double> suffix_time_, suffix_cost_;
};

bool violates_caps(const Instance& instance, const LowerBounds& b)
{
    // Bounds are summed in a different order than evaluate(), so allow for
    // rounding here. Leaves are still checked exactly.
    auto over = [](double bound, double cap) { return bound > cap + kCapSlack * std::max(1.0, cap); };
    const auto& caps = instance.caps;
    return (caps.max_time && over(b.time, *caps.max_time)) || (caps.budget && over(b.cost, *caps.budget));
}

std::vector<std::size_t> branch_permutation(const Instance& instance, BranchOrder order)
{
    std::vector<std::size_t> perm(instance.task_count());
    std::iota(perm.begin(), perm.end(), 0);
    if (order == BranchOrder::longest_task_first) {
        const CostTables tables(instance);
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            return tables.min_time(a) > tables.min_time(b);
        });
    }
    return perm;
}

class Search
{
public:
    Search(const Instance& instance, const BnbConfig& config)
        : instance_(instance),
          config_(config),
          state_(instance),
          partial_(instance.task_count(), 0),
          start_(std::chrono::steady_clock::now())
    {
    }

    void run()
    {
        if (config_.warm_start) {
            warm_start();
        }
        visit(0, state_.bounds(0));
    }

    bool aborted() const { return aborted_; }
    bool has_incumbent() const { return have_incumbent_; }
    const Assignment& incumbent() const { return incumbent_; }
    std::uint64_t nodes() const { return nodes_; }
    std::uint64_t pruned() const { return pruned_; }

private:
    struct Child
    {
        std::size_t vm;
        LowerBounds bounds;
    };

    bool prunable(const LowerBounds& b) const
    {
        if (violates_caps(instance_, b)) {
            return true;
        }
        if (!have_incumbent_) {
            return false;
        }
        switch (config_.prune_mode) {
        case PruneMode::scalar:
            return b.scalar >= best_.scalar - kPruneEpsilon;
        case PruneMode::paper_literal:
            return !(b.time < best_.time && b.cost < best_.cost && b.load < best_.load);
        case PruneMode::none:
            return false;
        }
        return false;
    }

    bool out_of_budget()
    {
        if (nodes_ >= config_.node_budget) {
            return true;
        }
        if (std::isfinite(config_.time_budget) && (nodes_ & 0xFFF) == 0) {
            const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
            if (spent.count() >= config_.time_budget) {
                return true;
            }
        }
        return false;
    }

    void report_node(std::size_t depth, const LowerBounds& b) const
    {
        if (!config_.hooks.on_node) {
            return;
        }
        BnbNode node;
        node.depth = depth;
        node.partial.assign(partial_.begin(), partial_.begin() + std::ptrdiff_t(depth));
        node.lb_time = b.time;
        node.lb_cost = b.cost;
        node.lb_load = b.load;
        node.lb_scalar = b.scalar;
        config_.hooks.on_node(instance_, node);
    }

    void offer(const Assignment& a, const Evaluation& e)
    {
        if (!check_caps(instance_, e)) {
            return;
        }
        bool better = !have_incumbent_;
        if (!better) {
            if (config_.prune_mode == PruneMode::paper_literal) {
                better = e.time < best_.time && e.cost < best_.cost && e.load < best_.load;
            } else {
                better = e.scalar < best_.scalar;
            }
        }
        if (better) {
            incumbent_ = a;
            best_ = e;
            have_incumbent_ = true;
            if (config_.hooks.on_incumbent) {
                config_.hooks.on_incumbent(e);
            }
        }
    }

    void visit(std::size_t depth, const LowerBounds& bounds)
    {
        if (aborted_ || out_of_budget()) {
            aborted_ = true;
            return;
        }
        ++nodes_;

        const std::size_t n = instance_.task_count();
        if (depth == n) {
            const auto e = evaluate(instance_, partial_);
            report_node(depth, {e.time, e.cost, e.load, e.scalar});
            offer(partial_, e);
            return;
        }
        report_node(depth, bounds);

        const std::size_t m = instance_.vm_count();
        std::vector<Child> children;
        children.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            const auto saved = state_.apply(depth, i);
            const auto b = state_.bounds(depth + 1);
            state_.restore(saved);
            if (prunable(b)) {
                ++pruned_;
                continue;
            }
            children.push_back({i, b});
        }
        std::stable_sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
            return a.bounds.scalar < b.bounds.scalar;
        });

        for (const auto& child : children) {
            if (aborted_) {
                return;
            }
            // The incumbent may have improved since the child was generated.
            if (prunable(child.bounds)) {
                ++pruned_;
                continue;
            }
            const auto saved = state_.apply(depth, child.vm);
            partial_[depth] = child.vm;
            visit(depth + 1, child.bounds);
            state_.restore(saved);
        }
    }

    // Each task, in branch order, goes to the VM giving the smallest partial scalar.
    void warm_start()
    {
        const std::size_t n = instance_.task_count();
        const std::size_t m = instance_.vm_count();
        std::vector<PartialState::Saved> trail;
        Assignment greedy(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t pick = 0;
            double best = kInf;
            for (std::size_t i = 0; i < m; ++i) {
                const auto saved = state_.apply(j, i);
                const double s = state_.partial_objectives().scalar;
                state_.restore(saved);
                if (s < best) {
                    best = s;
                    pick = i;
                }
            }
            greedy[j] = pick;
            trail.push_back(state_.apply(j, pick));
        }
        for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
            state_.restore(*it);
        }
        offer(greedy, evaluate(instance_, greedy));
    }

    const Instance& instance_;
    const BnbConfig& config_;
    PartialState state_;
    Assignment partial_;
    std::chrono::steady_clock::time_point start_;

    Assignment incumbent_;
    Evaluation best_;
    bool have_incumbent_ = false;
    bool aborted_ = false;
    std::uint64_t nodes_ = 0;
    std::uint64_t pruned_ = 0;
};

} // namespace

LowerBounds lower_bound(const Instance& instance, const BnbNode& node)
{
    if (node.partial.size() != node.depth || node.depth > instance.task_count()) {
        throw invalid_argument_error(fmt::format(
            "node depth {} does not match a partial assignment of {} entries over {} tasks",
            node.depth, node.partial.size(), instance.task_count()));
    }
    if (node.depth == instance.task_count()) {
        const auto e = evaluate(instance, node.partial);
        return {e.time, e.cost, e.load, e.scalar};
    }
    PartialState state(instance);
    for (std::size_t j = 0; j < node.depth; ++j) {
        if (node.partial[j] >= instance.vm_count()) {
            throw index_out_of_range_error(fmt::format(
                "task {} assigned to VM {} but only {} VMs exist", j, node.partial[j], instance.vm_count()));
        }
        state.apply(j, node.partial[j]);
    }
    return state.bounds(node.depth);
}

BnbResult solve_bnb(const Instance& instance, const BnbConfig& config)
{
    validate(instance);
    if (!(config.time_budget > 0.0) || config.node_budget == 0) {
        throw invalid_argument_error("BnB budgets must be > 0");
    }

    const auto perm = branch_permutation(instance, config.branch_order);
    Instance ordered = instance;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        ordered.tasks[k] = instance.tasks[perm[k]];
    }

    Search search(ordered, config);
    search.run();

    BnbResult result;
    result.nodes_expanded = search.nodes();
    result.pruned = search.pruned();
    result.proven_optimal = !search.aborted();
    if (search.has_incumbent()) {
        Assignment best(instance.task_count());
        for (std::size_t k = 0; k < perm.size(); ++k) {
            best[perm[k]] = search.incumbent()[k];
        }
        result.eval = evaluate(instance, best);
        result.best = std::move(best);
    }
    return result;
}

} // namespace qsched
