#ifndef QSCHED_RNG_HPP
#define QSCHED_RNG_HPP

#include <cstdint>
#include <random>

namespace qsched {

/// SplitMix64 finalizer; used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/**
 * Portable pseudo-random source.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard. The standard distributions are not (their algorithms vary by
 * library vendor), so the draws below are implemented here on top of the
 * raw 64-bit output. Identical seeds give identical streams on every
 * conforming platform.
 *
 * Stream splitting: the generator for logical stream `k` under master seed
 * `s` is seeded with splitmix64(splitmix64(s) ^ splitmix64(k + 1)).
 * Stream ids in use: 100/101 instance generation (VMs/tasks), 200/201 GA
 * (initial population/evolution).
 */
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng stream(std::uint64_t seed, std::uint64_t stream_id)
    {
        return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 1)));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n). n must be > 0. Rejection sampling, no modulo bias.
    std::uint64_t uniform_index(std::uint64_t n)
    {
        if (n <= 1) {
            return 0;
        }
        const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform integer in [lo, hi] (inclusive).
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi)
    {
        return lo + uniform_index(hi - lo + 1);
    }

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi]; returns lo when lo == hi.
    double uniform_real(double lo, double hi)
    {
        if (lo == hi) {
            return lo;
        }
        const double x = lo + (hi - lo) * uniform01();
        return x > hi ? hi : x;
    }

    bool bernoulli(double p)
    {
        if (p <= 0.0) {
            return false;
        }
        if (p >= 1.0) {
            return true;
        }
        return uniform01() < p;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace qsched

#endif
