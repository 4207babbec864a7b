#include <qsched/errors.hpp>
#include <qsched/model.hpp>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <string_view>

namespace qsched {

namespace {

void require(bool ok, std::string_view what)
{
    if (!ok) {
        throw invalid_argument_error(std::string(what));
    }
}

bool finite_nonneg(double x)
{
    return std::isfinite(x) && x >= 0.0;
}

bool finite_pos(double x)
{
    return std::isfinite(x) && x > 0.0;
}

} // namespace

void validate(const VmSpec& vm)
{
    require(finite_pos(vm.cpu), "vm.cpu must be > 0");
    require(finite_pos(vm.mem), "vm.mem must be > 0");
    require(finite_pos(vm.stor), "vm.stor must be > 0");
    require(finite_pos(vm.comm), "vm.comm must be > 0");
    require(finite_nonneg(vm.cpu_cost), "vm.cpu_cost must be >= 0");
    require(finite_nonneg(vm.mem_cost), "vm.mem_cost must be >= 0");
    require(finite_nonneg(vm.stor_cost), "vm.stor_cost must be >= 0");
    require(finite_nonneg(vm.comm_cost), "vm.comm_cost must be >= 0");
}

void validate(const TaskSpec& task)
{
    require(finite_nonneg(task.req_cpu), "task.req_cpu must be >= 0");
    require(finite_nonneg(task.req_mem), "task.req_mem must be >= 0");
    require(finite_nonneg(task.req_stor), "task.req_stor must be >= 0");
    require(finite_nonneg(task.req_comm), "task.req_comm must be >= 0");
    require(finite_nonneg(task.instruction_count), "task.instruction_count must be >= 0");
    require(finite_nonneg(task.data_size), "task.data_size must be >= 0");
    require(finite_nonneg(task.output_size), "task.output_size must be >= 0");
}

void validate(const QosWeights& w)
{
    for (double x : {w.w_time, w.w_cost, w.w_load}) {
        require(std::isfinite(x) && x >= 0.0 && x <= 1.0, "objective weights must lie in [0, 1]");
    }
    const double sum = w.w_time + w.w_cost + w.w_load;
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
        throw invalid_argument_error(
            fmt::format("w_time + w_cost + w_load must equal 1 (got {:.10g})", sum));
    }
    require(finite_nonneg(w.lw_cpu) && finite_nonneg(w.lw_mem) && finite_nonneg(w.lw_bw),
            "load sub-weights must be >= 0");
}

void validate(const Instance& instance)
{
    require(!instance.vms.empty(), "instance needs at least one VM");
    for (const auto& vm : instance.vms) {
        validate(vm);
    }
    for (const auto& task : instance.tasks) {
        validate(task);
    }
    validate(instance.weights);
    if (instance.caps.max_time) {
        require(finite_nonneg(*instance.caps.max_time), "max_time cap must be >= 0");
    }
    if (instance.caps.budget) {
        require(finite_nonneg(*instance.caps.budget), "budget cap must be >= 0");
    }
    const auto& s = instance.scales;
    require(finite_pos(s.time) && finite_pos(s.cost) && finite_pos(s.load),
            "objective scales must be > 0");
}

double task_exec_time(const TaskSpec& task, const VmSpec& vm)
{
    return task.instruction_count / vm.cpu;
}

double task_time(const TaskSpec& task, const VmSpec& vm)
{
    return task.instruction_count / vm.cpu + task.data_size / vm.comm;
}

double task_cost(const TaskSpec& task, const VmSpec& vm)
{
    return task_exec_time(task, vm) * vm.cpu_cost
         + (task.req_mem / 1024.0) * vm.mem_cost
         + (task.req_stor / 100.0) * vm.stor_cost
         + task.req_comm * vm.comm_cost;
}

Utilization utilization_from_demand(const VmSpec& vm, double sum_cpu, double sum_mem, double sum_comm)
{
    return {std::min(sum_cpu / vm.cpu, kMaxUtilization),
            std::min(sum_mem / vm.mem, kMaxUtilization),
            std::min(sum_comm / vm.comm, kMaxUtilization)};
}

Utilization machine_utilization(const VmSpec& vm, std::span<const TaskSpec> assigned)
{
    double cpu = 0.0, mem = 0.0, comm = 0.0;
    for (const auto& t : assigned) {
        cpu += t.req_cpu;
        mem += t.req_mem;
        comm += t.req_comm;
    }
    return utilization_from_demand(vm, cpu, mem, comm);
}

Utilization machine_utilization(const VmSpec& vm, std::span<const TaskSpec* const> assigned)
{
    double cpu = 0.0, mem = 0.0, comm = 0.0;
    for (const TaskSpec* t : assigned) {
        cpu += t->req_cpu;
        mem += t->req_mem;
        comm += t->req_comm;
    }
    return utilization_from_demand(vm, cpu, mem, comm);
}

namespace {

// 1 - (1 - u)^w, exact at w = 0 and w = 1.
double factor_load(double u, double w)
{
    if (w == 0.0 || u == 0.0) {
        return 0.0;
    }
    if (w == 1.0) {
        return u;
    }
    return -std::expm1(w * std::log1p(-u));
}

} // namespace

double machine_load(const Utilization& u, const QosWeights& w)
{
    // 1 - prod_k (1 - g_k), folded as c <- c + g - c * g.
    double load = 0.0;
    for (const double g : {factor_load(u.cpu, w.lw_cpu), factor_load(u.mem, w.lw_mem), factor_load(u.bw, w.lw_bw)}) {
        load = load + g - load * g;
    }
    // The exact value is below 1 but can round up to it.
    return std::min(load, std::nextafter(1.0, 0.0));
}

double scalarize(double time, double cost, double load, const QosWeights& w, const ObjectiveScales& s)
{
    return w.w_time * (time / s.time) + w.w_cost * (cost / s.cost) + w.w_load * (load / s.load);
}

Evaluation evaluate(const Instance& instance, std::span<const std::size_t> assignment)
{
    const std::size_t m = instance.vm_count();
    const std::size_t n = instance.task_count();
    if (assignment.size() != n) {
        throw invalid_argument_error(
            fmt::format("assignment has {} entries, instance has {} tasks", assignment.size(), n));
    }

    std::vector<double> busy(m, 0.0), cpu(m, 0.0), mem(m, 0.0), comm(m, 0.0);
    Evaluation e;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = assignment[j];
        if (i >= m) {
            throw index_out_of_range_error(
                fmt::format("task {} assigned to VM {} but only {} VMs exist", j, i, m));
        }
        const auto& task = instance.tasks[j];
        const auto& vm = instance.vms[i];
        busy[i] += task_time(task, vm);
        e.cost += task_cost(task, vm);
        cpu[i] += task.req_cpu;
        mem[i] += task.req_mem;
        comm[i] += task.req_comm;
    }
    for (std::size_t i = 0; i < m; ++i) {
        e.time = std::max(e.time, busy[i]);
        const auto u = utilization_from_demand(instance.vms[i], cpu[i], mem[i], comm[i]);
        e.load = std::max(e.load, machine_load(u, instance.weights));
    }
    e.scalar = scalarize(e.time, e.cost, e.load, instance.weights, instance.scales);
    return e;
}

bool check_caps(const Instance& instance, const Evaluation& eval)
{
    const auto& caps = instance.caps;
    if (caps.max_time && !(eval.time <= *caps.max_time)) {
        return false;
    }
    if (caps.budget && !(eval.cost <= *caps.budget)) {
        return false;
    }
    return true;
}

Assignment round_robin_assignment(const Instance& instance)
{
    Assignment a(instance.task_count());
    for (std::size_t j = 0; j < a.size(); ++j) {
        a[j] = j % instance.vm_count();
    }
    return a;
}

ObjectiveScales round_robin_scales(const Instance& instance)
{
    const auto e = evaluate(instance, round_robin_assignment(instance));
    auto pick = [](double v) { return v > 0.0 ? v : 1.0; };
    return {pick(e.time), pick(e.cost), pick(e.load)};
}

CostTables::CostTables(const Instance& instance)
    : vms_(instance.vm_count()),
      tasks_(instance.task_count()),
      time_(vms_ * tasks_),
      cost_(vms_ * tasks_),
      min_time_(tasks_, std::numeric_limits<double>::infinity()),
      min_cost_(tasks_, std::numeric_limits<double>::infinity())
{
    for (std::size_t i = 0; i < vms_; ++i) {
        for (std::size_t j = 0; j < tasks_; ++j) {
            const double t = task_time(instance.tasks[j], instance.vms[i]);
            const double c = task_cost(instance.tasks[j], instance.vms[i]);
            time_[i * tasks_ + j] = t;
            cost_[i * tasks_ + j] = c;
            min_time_[j] = std::min(min_time_[j], t);
            min_cost_[j] = std::min(min_cost_[j], c);
        }
    }
}

} // namespace qsched
