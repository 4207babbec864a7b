#include <qsched/errors.hpp>
#include <qsched/ga.hpp>

#include <algorithm>
#include <cmath>

namespace qsched {

namespace {

constexpr std::uint64_t kInitStream = 200;
constexpr std::uint64_t kEvolveStream = 201;

} // namespace

void validate(const GaParams& params)
{
    if (params.pop_size < 2) {
        throw invalid_argument_error("GA pop_size must be >= 2");
    }
    if (params.max_generations < 1) {
        throw invalid_argument_error("GA max_generations must be >= 1");
    }
    if (!(params.mutation_prob >= 0.0 && params.mutation_prob <= 1.0)) {
        throw invalid_argument_error("GA mutation_prob must lie in [0, 1]");
    }
}

bool fitter(const Chromosome& a, const Chromosome& b)
{
    if (a.feasible != b.feasible) {
        return a.feasible;
    }
    return a.fitness.scalar < b.fitness.scalar;
}

Chromosome score(const Instance& instance, Assignment genes)
{
    Chromosome ch;
    ch.fitness = evaluate(instance, genes);
    ch.feasible = check_caps(instance, ch.fitness);
    ch.genes = std::move(genes);
    return ch;
}

Population init_population(const Instance& instance, const GaParams& params, Rng& rng)
{
    const std::size_t m = instance.vm_count();
    Population pop;
    pop.reserve(params.pop_size);
    for (std::size_t p = 0; p < params.pop_size; ++p) {
        Assignment genes(instance.task_count());
        for (auto& g : genes) {
            g = rng.uniform_index(m);
        }
        pop.push_back(score(instance, std::move(genes)));
    }
    return pop;
}

Population init_population(const Instance& instance, const GaParams& params)
{
    auto rng = Rng::stream(params.seed, kInitStream);
    return init_population(instance, params, rng);
}

const Chromosome& select(const Population& population, Rng& rng)
{
    if (population.empty()) {
        throw invalid_argument_error("cannot select from an empty population");
    }
    return population[rng.uniform_index(population.size())];
}

Chromosome crossover_at(const Chromosome& parent1, const Chromosome& parent2,
                        std::size_t cut, const Instance& instance)
{
    const std::size_t n = parent1.genes.size();
    if (parent2.genes.size() != n) {
        throw invalid_argument_error("crossover parents differ in length");
    }
    cut = std::min(cut, n);
    Assignment genes(parent1.genes.begin(), parent1.genes.begin() + std::ptrdiff_t(cut));
    genes.insert(genes.end(), parent2.genes.begin() + std::ptrdiff_t(cut), parent2.genes.end());
    return score(instance, std::move(genes));
}

Chromosome crossover(const Chromosome& parent1, const Chromosome& parent2,
                     const Instance& instance, Rng& rng)
{
    const std::size_t n = parent1.genes.size();
    if (n <= 1) {
        return crossover_at(parent1, parent2, n, instance);
    }
    const std::size_t cut = 1 + rng.uniform_index(n - 1);
    return crossover_at(parent1, parent2, cut, instance);
}

Chromosome mutate(const Chromosome& ch, const Instance& instance, const GaParams& params, Rng& rng)
{
    Assignment genes = ch.genes;
    for (auto& g : genes) {
        if (rng.bernoulli(params.mutation_prob)) {
            g = rng.uniform_index(instance.vm_count());
        }
    }
    return score(instance, std::move(genes));
}

bool replace_if_better(Population& population, const Chromosome& child)
{
    if (population.empty()) {
        return false;
    }
    // First member with the largest (infeasible, scalar) key.
    auto worst = population.begin();
    for (auto it = population.begin() + 1; it != population.end(); ++it) {
        if (fitter(*worst, *it)) {
            worst = it;
        }
    }
    if (fitter(*worst, child)) {
        return false;
    }
    *worst = child;
    return true;
}

GaResult solve_ga(const Instance& instance, const GaParams& params)
{
    validate(instance);
    validate(params);

    GaResult result;
    result.seed = params.seed;
    result.history.reserve(params.max_generations);

    Population pop = init_population(instance, params);
    result.best = *std::min_element(pop.begin(), pop.end(), fitter);

    auto rng = Rng::stream(params.seed, kEvolveStream);
    for (std::size_t gen = 0; gen < params.max_generations; ++gen) {
        const Chromosome parent1 = select(pop, rng);
        const Chromosome parent2 = select(pop, rng);

        Chromosome child = crossover(parent1, parent2, instance, rng);
        replace_if_better(pop, child);

        Chromosome mutant = mutate(child, instance, params, rng);
        replace_if_better(pop, mutant);

        for (const auto* c : {&child, &mutant}) {
            if (fitter(*c, result.best)) {
                result.best = *c;
            }
        }
        result.history.push_back(result.best.fitness.scalar);
    }
    return result;
}

} // namespace qsched
