#ifndef QSCHED_MODEL_HPP
#define QSCHED_MODEL_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qsched {

/// Upper clamp on each utilization component; keeps the composite load below 1.
inline constexpr double kMaxUtilization = 0.999999;

/// Absolute tolerance on w_time + w_cost + w_load == 1.
inline constexpr double kWeightSumTolerance = 1e-9;

/**
 * Capacities and unit prices of one virtual machine.
 *
 * Units: cpu in MIPS, mem in MB, stor in GB, comm in MB/s. Prices are cost
 * units per CPU-second, per 1024 MB, per 100 GB and per MB/s respectively.
 */
struct VmSpec
{
    double cpu = 1.0;
    double mem = 1.0;
    double stor = 1.0;
    double comm = 1.0;
    double cpu_cost = 0.0;
    double mem_cost = 0.0;
    double stor_cost = 0.0;
    double comm_cost = 0.0;

    bool operator==(const VmSpec&) const = default;
};

/**
 * Resource demands of one task.
 *
 * instruction_count is in MI, data_size (input file) and output_size in MB.
 * output_size does not enter any objective; it is carried through I/O only.
 */
struct TaskSpec
{
    double req_cpu = 0.0;
    double req_mem = 0.0;
    double req_stor = 0.0;
    double req_comm = 0.0;
    double instruction_count = 0.0;
    double data_size = 0.0;
    double output_size = 0.0;

    bool operator==(const TaskSpec&) const = default;
};

/// Objective weights (time, cost, load) and the load sub-weights (cpu, mem, bw).
struct QosWeights
{
    double w_time = 1.0 / 3.0;
    double w_cost = 1.0 / 3.0;
    double w_load = 1.0 / 3.0;
    double lw_cpu = 1.0 / 3.0;
    double lw_mem = 1.0 / 3.0;
    double lw_bw = 1.0 / 3.0;

    bool operator==(const QosWeights&) const = default;
};

/// Optional hard constraints. Comparisons are inclusive.
struct Caps
{
    std::optional<double> max_time;
    std::optional<double> budget;

    bool operator==(const Caps&) const = default;
};

/**
 * Per-objective divisors applied before weighting.
 *
 * All ones is the raw model. round_robin_scales() computes the normalized
 * variant.
 */
struct ObjectiveScales
{
    double time = 1.0;
    double cost = 1.0;
    double load = 1.0;

    bool operator==(const ObjectiveScales&) const = default;
};

struct Instance
{
    std::vector<VmSpec> vms;
    std::vector<TaskSpec> tasks;
    QosWeights weights;
    Caps caps;
    ObjectiveScales scales;

    std::size_t vm_count() const noexcept { return vms.size(); }
    std::size_t task_count() const noexcept { return tasks.size(); }

    bool operator==(const Instance&) const = default;
};

/// assign[j] is the index of the VM that runs task j.
using Assignment = std::vector<std::size_t>;

struct Evaluation
{
    double time = 0.0;
    double cost = 0.0;
    double load = 0.0;
    double scalar = 0.0;

    bool operator==(const Evaluation&) const = default;
};

/// CPU, memory and bandwidth utilization of one machine.
struct Utilization
{
    double cpu = 0.0;
    double mem = 0.0;
    double bw = 0.0;

    bool operator==(const Utilization&) const = default;
};

// Validation. Each throws invalid_argument_error naming the offending field.
void validate(const VmSpec& vm);
void validate(const TaskSpec& task);
void validate(const QosWeights& weights);
void validate(const Instance& instance);

/// instruction_count / cpu.
double task_exec_time(const TaskSpec& task, const VmSpec& vm);

/// Execution plus transfer time: instruction_count / cpu + data_size / comm.
double task_time(const TaskSpec& task, const VmSpec& vm);

/// Proportional billing of CPU-seconds, 1024 MB blocks, 100 GB blocks and MB/s.
double task_cost(const TaskSpec& task, const VmSpec& vm);

/// Utilization from summed demands; each component clamped to kMaxUtilization.
Utilization utilization_from_demand(const VmSpec& vm, double sum_cpu, double sum_mem, double sum_comm);

Utilization machine_utilization(const VmSpec& vm, std::span<const TaskSpec> assigned);
Utilization machine_utilization(const VmSpec& vm, std::span<const TaskSpec* const> assigned);

/// Composite load 1 - prod_k (1 - u_k)^lw_k.
double machine_load(const Utilization& u, const QosWeights& weights);

/// Weighted sum of the three objectives after dividing by `scales`.
double scalarize(double time, double cost, double load, const QosWeights& weights,
                 const ObjectiveScales& scales = {});

Evaluation evaluate(const Instance& instance, std::span<const std::size_t> assignment);

/// True iff the evaluation respects every cap that is set.
bool check_caps(const Instance& instance, const Evaluation& eval);

/// Task j is placed on VM j mod m.
Assignment round_robin_assignment(const Instance& instance);

/**
 * Scales that make each objective equal to 1 under the round-robin
 * assignment. An objective that is zero under that baseline keeps scale 1.
 */
ObjectiveScales round_robin_scales(const Instance& instance);

/**
 * Precomputed P_ij and C_ij tables, stored VM-major: time(i, j), cost(i, j).
 */
class CostTables
{
public:
    explicit CostTables(const Instance& instance);

    std::size_t vm_count() const noexcept { return vms_; }
    std::size_t task_count() const noexcept { return tasks_; }

    double time(std::size_t vm, std::size_t task) const { return time_[vm * tasks_ + task]; }
    double cost(std::size_t vm, std::size_t task) const { return cost_[vm * tasks_ + task]; }

    double min_time(std::size_t task) const { return min_time_[task]; }
    double min_cost(std::size_t task) const { return min_cost_[task]; }

private:
    std::size_t vms_;
    std::size_t tasks_;
    std::vector<double> time_;
    std::vector<double> cost_;
    std::vector<double> min_time_;
    std::vector<double> min_cost_;
};

} // namespace qsched

#endif
