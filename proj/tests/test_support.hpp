#ifndef QSCHED_TESTS_TEST_SUPPORT_HPP
#define QSCHED_TESTS_TEST_SUPPORT_HPP

// Test-only helpers. Nothing here calls the solvers under test.

#include <qsched/model.hpp>

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace qsched::testing {

/// Heterogeneous instance with random capacities, prices and demands.
inline Instance random_instance(std::mt19937_64& gen, std::size_t n, std::size_t m)
{
    std::uniform_real_distribution<double> cpu(500.0, 5000.0), mem(1000.0, 8000.0), stor(50.0, 500.0),
        comm(1.0, 100.0), price(0.0, 2.0);
    std::uniform_real_distribution<double> len(100.0, 10000.0), data(0.0, 50.0), rcpu(0.0, 2000.0),
        rmem(0.0, 4000.0), rstor(0.0, 100.0), rcomm(0.0, 50.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Instance inst;
    for (std::size_t i = 0; i < m; ++i) {
        inst.vms.push_back({cpu(gen), mem(gen), stor(gen), comm(gen), price(gen), price(gen), price(gen), price(gen)});
    }
    for (std::size_t j = 0; j < n; ++j) {
        TaskSpec t;
        t.instruction_count = len(gen);
        t.data_size = data(gen);
        t.req_cpu = rcpu(gen);
        t.req_mem = rmem(gen);
        t.req_stor = rstor(gen);
        t.req_comm = rcomm(gen);
        inst.tasks.push_back(t);
    }
    double a = unit(gen), b = unit(gen), c = unit(gen);
    const double s = a + b + c;
    inst.weights.w_time = a / s;
    inst.weights.w_cost = b / s;
    inst.weights.w_load = 1.0 - a / s - b / s;
    inst.weights.lw_cpu = unit(gen) * 2.0;
    inst.weights.lw_mem = unit(gen) * 2.0;
    inst.weights.lw_bw = unit(gen) * 2.0;
    return inst;
}

inline Assignment random_assignment(std::mt19937_64& gen, const Instance& inst)
{
    std::uniform_int_distribution<std::size_t> vm(0, inst.vm_count() - 1);
    Assignment a(inst.task_count());
    for (auto& x : a) {
        x = vm(gen);
    }
    return a;
}

/// Calls f on every assignment in lexicographic order.
inline void for_each_assignment(std::size_t n, std::size_t m, const std::function<void(const Assignment&)>& f)
{
    Assignment a(n, 0);
    while (true) {
        f(a);
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++a[k] < m) {
                break;
            }
            a[k] = 0;
            if (k == 0) {
                return;
            }
        }
        if (n == 0) {
            return;
        }
    }
}

/// Makespan computed directly from task_time, independent of evaluate().
inline double direct_makespan(const Instance& inst, const Assignment& a)
{
    std::vector<double> busy(inst.vm_count(), 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        busy[a[j]] += task_time(inst.tasks[j], inst.vms[a[j]]);
    }
    double t = 0.0;
    for (double b : busy) {
        t = std::max(t, b);
    }
    return t;
}

/// Minimum over all assignments of `objective`, by enumeration.
inline double brute_min(const Instance& inst, const std::function<double(const Assignment&)>& objective)
{
    double best = std::numeric_limits<double>::infinity();
    for_each_assignment(inst.task_count(), inst.vm_count(),
                        [&](const Assignment& a) { best = std::min(best, objective(a)); });
    return best;
}

} // namespace qsched::testing

#endif
