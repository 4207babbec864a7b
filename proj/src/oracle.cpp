#include <qsched/errors.hpp>
#include <qsched/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace qsched {

namespace {

// Advances `a` to the next vector in mixed-radix order. Returns false on wrap.
bool next_assignment(Assignment& a, std::size_t radix)
{
    for (std::size_t k = a.size(); k-- > 0;) {
        if (++a[k] < radix) {
            return true;
        }
        a[k] = 0;
    }
    return false;
}

} // namespace

std::uint64_t assignment_space_size(std::size_t vm_count, std::size_t task_count)
{
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < task_count; ++j) {
        if (vm_count != 0 && total > std::numeric_limits<std::uint64_t>::max() / vm_count) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= vm_count;
    }
    return total;
}

OracleResult solve_exhaustive(const Instance& instance, std::uint64_t guard)
{
    validate(instance);
    const std::size_t m = instance.vm_count();
    const std::size_t n = instance.task_count();
    const auto space = assignment_space_size(m, n);
    if (space > guard) {
        throw too_large_error(fmt::format(
            "exhaustive search over {}^{} assignments exceeds the guard of {}", m, n, guard));
    }

    // First pass: the minimum.
    OracleResult result;
    bool found = false;
    Assignment a(n, 0);
    do {
        const auto e = evaluate(instance, a);
        if (!check_caps(instance, e)) {
            continue;
        }
        if (!found || e.scalar < result.eval.scalar) {
            result.best = a;
            result.eval = e;
            found = true;
        }
    } while (next_assignment(a, m));

    if (!found) {
        throw infeasible_error("no assignment satisfies the time and budget caps");
    }

    // Second pass: count the optima.
    std::fill(a.begin(), a.end(), 0);
    do {
        const auto e = evaluate(instance, a);
        if (check_caps(instance, e) && std::abs(e.scalar - result.eval.scalar) <= kOracleTieTolerance) {
            ++result.optima_count;
        }
    } while (next_assignment(a, m));

    return result;
}

} // namespace qsched
