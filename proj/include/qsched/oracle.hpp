#ifndef QSCHED_ORACLE_HPP
#define QSCHED_ORACLE_HPP

#include <qsched/model.hpp>

#include <cstdint>

namespace qsched {

/// Largest m^n that solve_exhaustive will enumerate.
inline constexpr std::uint64_t kDefaultEnumerationGuard = 10'000'000;

/// Scalars within this distance of the optimum count as tied optima.
inline constexpr double kOracleTieTolerance = 1e-9;

struct OracleResult
{
    Assignment best;
    Evaluation eval;
    std::uint64_t optima_count = 0;
};

/// m^n, saturating at UINT64_MAX.
std::uint64_t assignment_space_size(std::size_t vm_count, std::size_t task_count);

/**
 * Enumerates every assignment in lexicographic (mixed-radix) order and
 * returns the one with the smallest scalar among those respecting the caps.
 * Exact ties go to the lexicographically smallest vector.
 *
 * Throws too_large_error when m^n > guard, infeasible_error when no
 * assignment respects the caps.
 */
OracleResult solve_exhaustive(const Instance& instance,
                              std::uint64_t guard = kDefaultEnumerationGuard);

} // namespace qsched

#endif
