#include <qsched/bench.hpp>
#include <qsched/errors.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fmt/format.h>
#include <thread>

namespace qsched {

namespace {

struct Cell
{
    std::size_t n;
    std::string solver;
    std::uint64_t seed;
};

BenchRecord record_from(const Cell& cell, const Evaluation& e)
{
    BenchRecord r;
    r.n_tasks = cell.n;
    r.solver = cell.solver;
    r.seed = cell.seed;
    r.time_objective = e.time;
    r.cost_objective = e.cost;
    r.load_objective = e.load;
    r.scalar = e.scalar;
    return r;
}

BenchRecord run_cell(const BenchOptions& options, const Cell& cell)
{
    BenchRecord r = record_from(cell, {});
    if (cell.solver == "bnb" && cell.n > options.bnb_max_tasks) {
        r.status = "skipped";
        return r;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        const Instance inst = bench_instance(options, cell.n, cell.seed);
        if (cell.solver == "bnb") {
            const auto res = solve_bnb(inst, options.bnb);
            r = record_from(cell, res.eval);
            r.nodes_or_generations = res.nodes_expanded;
            r.proven_optimal = res.proven_optimal;
            if (res.infeasible()) {
                r.status = "infeasible";
            }
        } else if (cell.solver == "ga") {
            GaParams params = options.ga;
            params.seed = cell.seed;
            const auto res = solve_ga(inst, params);
            r = record_from(cell, res.best.fitness);
            r.nodes_or_generations = res.history.size();
            if (!res.best.feasible) {
                r.status = "infeasible";
            }
        } else {
            const auto res = solve_exhaustive(inst, options.brute_guard);
            r = record_from(cell, res.eval);
            r.nodes_or_generations = assignment_space_size(inst.vm_count(), inst.task_count());
            r.proven_optimal = true;
        }
    } catch (const too_large_error&) {
        r = record_from(cell, {});
        r.status = "too_large";
    } catch (const infeasible_error&) {
        r = record_from(cell, {});
        r.status = "infeasible";
        r.proven_optimal = true;
    } catch (const std::exception&) {
        r = record_from(cell, {});
        r.status = "error";
    }
    const std::chrono::duration<double, std::milli> spent = std::chrono::steady_clock::now() - start;
    r.wall_clock_ms = spent.count();
    return r;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) {
            break;
        }
        pos = next + 1;
    }
    return out;
}

template <typename T>
T parse_field(std::string_view text, std::size_t line, const char* column)
{
    const std::string s(text);
    try {
        std::size_t used = 0;
        T value;
        if constexpr (std::is_same_v<T, double>) {
            value = std::stod(s, &used);
        } else {
            value = static_cast<T>(std::stoull(s, &used));
        }
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return value;
    } catch (const std::exception&) {
        throw parse_error(fmt::format("line {}: column {}: cannot parse '{}'", line, column, s), line);
    }
}

} // namespace

void validate(const BenchOptions& options)
{
    if (options.task_counts.empty()) {
        throw invalid_argument_error("bench needs at least one task count");
    }
    if (options.solvers.empty()) {
        throw invalid_argument_error("bench needs at least one solver");
    }
    for (const auto& s : options.solvers) {
        if (s != "bnb" && s != "ga" && s != "brute") {
            throw invalid_argument_error(fmt::format("unknown solver '{}' (expected bnb, ga or brute)", s));
        }
    }
    if (options.seeds == 0) {
        throw invalid_argument_error("bench needs at least one seed");
    }
    validate(options.ga);
    validate(options.weights);
    validate(options.preset.ranges);
}

Instance bench_instance(const BenchOptions& options, std::size_t n, std::uint64_t seed)
{
    Instance inst = generate_instance(n, options.preset, seed, options.weights);
    if (options.normalize) {
        inst.scales = round_robin_scales(inst);
    }
    return inst;
}

std::vector<BenchRecord> run_bench(const BenchOptions& options)
{
    validate(options);

    std::vector<Cell> cells;
    for (auto n : options.task_counts) {
        for (const auto& solver : options.solvers) {
            for (std::size_t k = 0; k < options.seeds; ++k) {
                cells.push_back({n, solver, options.base_seed + k});
            }
        }
    }

    std::vector<BenchRecord> records(cells.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min(options.jobs, cells.size()));
    if (workers == 1) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            records[c] = run_cell(options, cells[c]);
        }
        return records;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < cells.size(); c = next++) {
                records[c] = run_cell(options, cells[c]);
            }
        });
    }
    pool.clear();
    return records;
}

std::string bench_to_csv(const std::vector<BenchRecord>& records)
{
    std::string out(kBenchCsvHeader);
    out += '\n';
    for (const auto& r : records) {
        out += fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.3f},{},{},{},{}\n", r.n_tasks, r.solver,
                           r.time_objective, r.cost_objective, r.load_objective, r.scalar, r.wall_clock_ms,
                           r.nodes_or_generations, r.seed, r.proven_optimal ? "true" : "false", r.status);
    }
    return out;
}

std::vector<BenchRecord> bench_from_csv(std::string_view text)
{
    auto lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.empty() || lines.front() != kBenchCsvHeader) {
        throw parse_error("line 1: unexpected CSV header", 1);
    }
    std::vector<BenchRecord> out;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const std::size_t line = k + 1;
        const auto f = split(lines[k], ',');
        if (f.size() != 11) {
            throw parse_error(fmt::format("line {}: expected 11 columns, found {}", line, f.size()), line);
        }
        BenchRecord r;
        r.n_tasks = parse_field<std::size_t>(f[0], line, "n_tasks");
        r.solver = std::string(f[1]);
        r.time_objective = parse_field<double>(f[2], line, "time_objective");
        r.cost_objective = parse_field<double>(f[3], line, "cost_objective");
        r.load_objective = parse_field<double>(f[4], line, "load_objective");
        r.scalar = parse_field<double>(f[5], line, "scalar");
        r.wall_clock_ms = parse_field<double>(f[6], line, "wall_clock_ms");
        r.nodes_or_generations = parse_field<std::uint64_t>(f[7], line, "nodes_or_generations");
        r.seed = parse_field<std::uint64_t>(f[8], line, "seed");
        if (f[9] != "true" && f[9] != "false") {
            throw parse_error(fmt::format("line {}: column proven_optimal: expected true or false", line), line);
        }
        r.proven_optimal = f[9] == "true";
        r.status = std::string(f[10]);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace qsched
