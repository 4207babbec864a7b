#ifndef QSCHED_GA_HPP
#define QSCHED_GA_HPP

#include <qsched/model.hpp>
#include <qsched/rng.hpp>

#include <cstdint>
#include <vector>

namespace qsched {

struct GaParams
{
    std::size_t pop_size = 20;
    std::size_t max_generations = 100;
    double mutation_prob = 0.05; ///< per gene
    std::uint64_t seed = 0;
};

void validate(const GaParams& params);

struct Chromosome
{
    Assignment genes;
    Evaluation fitness;
    bool feasible = true;

    bool operator==(const Chromosome&) const = default;
};

using Population = std::vector<Chromosome>;

struct GaResult
{
    Chromosome best;             ///< best ever seen, not just in the last generation
    std::vector<double> history; ///< best-ever scalar after each generation
    std::uint64_t seed = 0;
};

/// Feasible chromosomes rank before infeasible ones, then by scalar.
bool fitter(const Chromosome& a, const Chromosome& b);

Chromosome score(const Instance& instance, Assignment genes);

/// Draws from RNG stream 200 of params.seed; solve_ga evolves on stream 201.
Population init_population(const Instance& instance, const GaParams& params);
Population init_population(const Instance& instance, const GaParams& params, Rng& rng);

/// Uniform pick: each member with probability 1 / population.size().
const Chromosome& select(const Population& population, Rng& rng);

/// One-point crossover with a uniform cut in [1, n-1]; copies parent1 when n <= 1.
Chromosome crossover(const Chromosome& parent1, const Chromosome& parent2,
                     const Instance& instance, Rng& rng);

/// Child takes genes [0, cut) from parent1 and [cut, n) from parent2.
Chromosome crossover_at(const Chromosome& parent1, const Chromosome& parent2,
                        std::size_t cut, const Instance& instance);

/// Each gene is resampled uniformly over the VMs with probability mutation_prob.
Chromosome mutate(const Chromosome& ch, const Instance& instance, const GaParams& params, Rng& rng);

/**
 * Replaces the least fit member (first one on ties) with `child` when the
 * child is at least as fit. Returns true if a replacement happened.
 */
bool replace_if_better(Population& population, const Chromosome& child);

GaResult solve_ga(const Instance& instance, const GaParams& params = {});

} // namespace qsched

#endif
