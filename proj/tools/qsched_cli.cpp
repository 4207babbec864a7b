// qsched: generate scheduling instances, solve them, and benchmark the solvers.
//
// Exit codes:
//   0  success
//   1  runtime failure (I/O, malformed instance file)
//   2  bad flags or flag values
//   3  no assignment satisfies the caps
//   4  exhaustive search refused (m^n above the guard)

#include <qsched/bench.hpp>
#include <qsched/bnb.hpp>
#include <qsched/errors.hpp>
#include <qsched/ga.hpp>
#include <qsched/instance_io.hpp>
#include <qsched/oracle.hpp>
#include <qsched/workload.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <iostream>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace fs = std::filesystem;

namespace {

enum ExitCode : int
{
    kOk = 0,
    kRuntimeError = 1,
    kUsageError = 2,
    kInfeasible = 3,
    kTooLarge = 4,
};

/// A flag value that parses but makes no sense (bad weights, unknown preset, ...).
struct usage_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct GlobalOptions
{
    std::uint64_t seed = 0;
    std::vector<double> weights;
    std::vector<double> load_weights;
    std::string preset = "table2";
    std::string output;
    bool normalize = false;
};

struct SolverOptions
{
    std::string prune = "scalar";
    std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
    double time_budget = 60.0;
    std::string branch_order = "input";
    bool warm_start = false;
    std::size_t pop_size = qsched::GaParams{}.pop_size;
    std::size_t generations = qsched::GaParams{}.max_generations;
    double mutation = qsched::GaParams{}.mutation_prob;
    std::uint64_t guard = qsched::kDefaultEnumerationGuard;
};

void add_solver_flags(CLI::App& cmd, SolverOptions& s)
{
    cmd.add_option("--prune", s.prune, "BnB pruning rule")
        ->check(CLI::IsMember({"scalar", "paper", "none"}))
        ->capture_default_str();
    cmd.add_option("--node-budget", s.node_budget, "BnB: maximum nodes expanded")->check(CLI::PositiveNumber);
    cmd.add_option("--time-budget", s.time_budget, "BnB: wall-clock limit in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--branch-order", s.branch_order, "BnB task order")
        ->check(CLI::IsMember({"input", "longest"}))
        ->capture_default_str();
    cmd.add_flag("--warm-start", s.warm_start, "BnB: start from a greedy incumbent");
    cmd.add_option("--pop-size", s.pop_size, "GA population size")->capture_default_str();
    cmd.add_option("--generations", s.generations, "GA generation count")->capture_default_str();
    cmd.add_option("--mutation", s.mutation, "GA per-gene mutation probability")->capture_default_str();
    cmd.add_option("--guard", s.guard, "brute: largest m^n to enumerate")->capture_default_str();
}

qsched::BnbConfig bnb_config(const SolverOptions& s)
{
    qsched::BnbConfig cfg;
    cfg.prune_mode = s.prune == "paper" ? qsched::PruneMode::paper_literal
                   : s.prune == "none"  ? qsched::PruneMode::none
                                        : qsched::PruneMode::scalar;
    cfg.node_budget = s.node_budget;
    cfg.time_budget = s.time_budget;
    cfg.branch_order = s.branch_order == "longest" ? qsched::BranchOrder::longest_task_first
                                                   : qsched::BranchOrder::input;
    cfg.warm_start = s.warm_start;
    return cfg;
}

qsched::GaParams ga_params(const SolverOptions& s, std::uint64_t seed)
{
    qsched::GaParams p{s.pop_size, s.generations, s.mutation, seed};
    try {
        qsched::validate(p);
    } catch (const qsched::invalid_argument_error& e) {
        throw usage_error(e.what());
    }
    return p;
}

/// Overrides `w` with whatever --weights / --load-weights supplied.
qsched::QosWeights apply_weights(qsched::QosWeights w, const GlobalOptions& g)
{
    if (!g.weights.empty()) {
        if (g.weights.size() != 3) {
            throw usage_error("--weights takes exactly three values: w_time,w_cost,w_load");
        }
        w.w_time = g.weights[0];
        w.w_cost = g.weights[1];
        w.w_load = g.weights[2];
    }
    if (!g.load_weights.empty()) {
        if (g.load_weights.size() != 3) {
            throw usage_error("--load-weights takes exactly three values: lw_cpu,lw_mem,lw_bw");
        }
        w.lw_cpu = g.load_weights[0];
        w.lw_mem = g.load_weights[1];
        w.lw_bw = g.load_weights[2];
    }
    try {
        qsched::validate(w);
    } catch (const qsched::invalid_argument_error& e) {
        throw usage_error(e.what());
    }
    return w;
}

qsched::Preset preset(const GlobalOptions& g)
{
    try {
        return qsched::preset_by_name(g.preset);
    } catch (const qsched::invalid_argument_error& e) {
        throw usage_error(e.what());
    }
}

void configure_logging()
{
    auto logger = spdlog::stderr_color_mt("qsched");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("QOS_SCHED_LOG")) {
        spdlog::set_level(spdlog::level::from_str(level));
    }
}

// gen

struct GenOptions
{
    std::size_t tasks = 0;
    std::optional<double> max_time;
    std::optional<double> budget;
};

int cmd_gen(const GlobalOptions& g, const GenOptions& o)
{
    const auto weights = apply_weights({}, g);
    auto inst = qsched::generate_instance(o.tasks, preset(g), g.seed, weights);
    inst.caps.max_time = o.max_time;
    inst.caps.budget = o.budget;
    if (g.normalize) {
        inst.scales = qsched::round_robin_scales(inst);
    }
    const fs::path out = g.output.empty() ? fs::path("instance.json") : fs::path(g.output);
    const auto text = qsched::instance_to_json(inst);
    qsched::write_file(out, text);
    spdlog::info("wrote {} tasks x {} VMs", inst.task_count(), inst.vm_count());
    fmt::print("{}\n", out.string());
    fmt::print("fnv1a64:{}\n", qsched::fnv1a_hex(text));
    return kOk;
}

// solve

struct SolveOptions
{
    std::string instance;
    std::string algo = "bnb";
};

int cmd_solve(const GlobalOptions& g, const SolveOptions& o, const SolverOptions& s)
{
    auto inst = qsched::load_instance(o.instance);
    inst.weights = apply_weights(inst.weights, g);
    if (g.normalize) {
        inst.scales = qsched::round_robin_scales(inst);
    }

    nlohmann::ordered_json report;
    report["instance"] = fs::path(o.instance).filename().string();
    report["algo"] = o.algo;

    std::optional<qsched::Assignment> best;
    qsched::Evaluation eval;
    bool feasible = true;
    const auto start = std::chrono::steady_clock::now();
    if (o.algo == "bnb") {
        const auto res = qsched::solve_bnb(inst, bnb_config(s));
        best = res.best;
        eval = res.eval;
        feasible = best.has_value();
        report["nodes_expanded"] = res.nodes_expanded;
        report["pruned"] = res.pruned;
        report["proven_optimal"] = res.proven_optimal;
    } else if (o.algo == "ga") {
        const auto res = qsched::solve_ga(inst, ga_params(s, g.seed));
        best = res.best.genes;
        eval = res.best.fitness;
        feasible = res.best.feasible;
        report["seed"] = res.seed;
        report["generations"] = res.history.size();
        report["history"] = res.history;
    } else {
        try {
            const auto res = qsched::solve_exhaustive(inst, s.guard);
            best = res.best;
            eval = res.eval;
            report["optima_count"] = res.optima_count;
            report["enumerated"] = qsched::assignment_space_size(inst.vm_count(), inst.task_count());
        } catch (const qsched::infeasible_error&) {
            feasible = false;
        }
    }
    const std::chrono::duration<double, std::milli> spent = std::chrono::steady_clock::now() - start;

    report["feasible"] = feasible;
    if (best && feasible) {
        report["assignment"] = *best;
        report["time"] = eval.time;
        report["cost"] = eval.cost;
        report["load"] = eval.load;
        report["scalar"] = eval.scalar;
    }

    fmt::print("algo: {}\n", o.algo);
    fmt::print("feasible: {}\n", feasible);
    if (best && feasible) {
        fmt::print("assignment: [{}]\n", fmt::join(*best, ", "));
        fmt::print("time: {:.17g}\ncost: {:.17g}\nload: {:.17g}\nscalar: {:.17g}\n", eval.time, eval.cost,
                   eval.load, eval.scalar);
    }
    for (const char* key : {"nodes_expanded", "pruned", "proven_optimal", "generations", "optima_count"}) {
        if (report.contains(key)) {
            fmt::print("{}: {}\n", key, report[key].dump());
        }
    }
    spdlog::info("{} finished in {:.3f} ms", o.algo, spent.count());

    if (!g.output.empty()) {
        report["wall_clock_ms"] = spent.count();
        qsched::write_file(g.output, report.dump(2) + "\n");
    }
    return feasible ? kOk : kInfeasible;
}

// bench

struct BenchFlags
{
    std::vector<std::size_t> tasks;
    std::vector<std::string> solvers{"bnb", "ga"};
    std::size_t seeds = 5;
    std::size_t bnb_max_tasks = 12;
    std::size_t jobs = 1;
};

int cmd_bench(const GlobalOptions& g, const BenchFlags& b, const SolverOptions& s)
{
    qsched::BenchOptions opt;
    opt.task_counts = b.tasks;
    opt.solvers = b.solvers;
    opt.seeds = b.seeds;
    opt.base_seed = g.seed;
    opt.preset = preset(g);
    opt.weights = apply_weights({}, g);
    opt.normalize = g.normalize;
    opt.bnb_max_tasks = b.bnb_max_tasks;
    opt.bnb = bnb_config(s);
    opt.ga = ga_params(s, 0);
    opt.brute_guard = s.guard;
    opt.jobs = b.jobs;
    try {
        qsched::validate(opt);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }

    const fs::path dir = g.output.empty() ? fs::path("bench_out") : fs::path(g.output);
    fs::create_directories(dir);

    const auto records = qsched::run_bench(opt);
    const auto csv = qsched::bench_to_csv(records);
    qsched::write_file(dir / "bench.csv", csv);
    const auto charts = qsched::render_charts(csv);
    qsched::write_file(dir / "time.svg", charts.time_svg);
    qsched::write_file(dir / "cost.svg", charts.cost_svg);
    qsched::write_file(dir / "load.svg", charts.load_svg);

    std::size_t failed = 0;
    for (const auto& r : records) {
        if (r.status != "ok" && r.status != "skipped") {
            ++failed;
            spdlog::warn("cell n={} solver={} seed={}: {}", r.n_tasks, r.solver, r.seed, r.status);
        }
    }
    fmt::print("records: {}\n", records.size());
    fmt::print("not ok: {}\n", failed);
    for (const char* f : {"bench.csv", "time.svg", "cost.svg", "load.svg"}) {
        fmt::print("{}\n", (dir / f).string());
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    configure_logging();

    CLI::App app{"Multi-QoS task-to-VM scheduling: instance generation, exact and heuristic solvers, benchmarks"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_option("--weights", g.weights, "objective weights w_time,w_cost,w_load")->delimiter(',');
    app.add_option("--load-weights", g.load_weights, "load sub-weights lw_cpu,lw_mem,lw_bw")->delimiter(',');
    app.add_option("--preset", g.preset, "instance preset")
        ->check(CLI::IsMember(qsched::preset_names()))
        ->capture_default_str();
    app.add_option("-o,--output", g.output, "output path (file for gen/solve, directory for bench)");
    app.add_flag("--normalize", g.normalize, "divide each objective by its round-robin value");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random instance file");
    gen_cmd->add_option("--tasks", gen.tasks, "number of tasks")->required();
    gen_cmd->add_option("--max-time", gen.max_time, "makespan cap in seconds");
    gen_cmd->add_option("--budget", gen.budget, "cost cap");

    SolveOptions solve;
    SolverOptions solver_flags;
    auto* solve_cmd = app.add_subcommand("solve", "solve an instance file");
    solve_cmd->add_option("instance", solve.instance, "instance JSON file")->required();
    solve_cmd->add_option("--algo", solve.algo, "solver")
        ->check(CLI::IsMember({"bnb", "ga", "brute"}))
        ->capture_default_str();
    add_solver_flags(*solve_cmd, solver_flags);

    BenchFlags bench;
    auto* bench_cmd = app.add_subcommand("bench", "compare solvers across task counts");
    bench_cmd->add_option("--tasks", bench.tasks, "task counts, e.g. 4,8,12")->delimiter(',')->required();
    bench_cmd->add_option("--solvers", bench.solvers, "solvers, e.g. bnb,ga,brute")
        ->delimiter(',')
        ->check(CLI::IsMember({"bnb", "ga", "brute"}));
    bench_cmd->add_option("--seeds", bench.seeds, "seeds per cell")->check(CLI::PositiveNumber)->capture_default_str();
    bench_cmd->add_option("--bnb-max-tasks", bench.bnb_max_tasks, "largest n given to BnB")->capture_default_str();
    bench_cmd->add_option("--jobs", bench.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    add_solver_flags(*bench_cmd, solver_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*gen_cmd) {
            return cmd_gen(g, gen);
        }
        if (*solve_cmd) {
            return cmd_solve(g, solve, solver_flags);
        }
        return cmd_bench(g, bench, solver_flags);
    } catch (const usage_error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kUsageError;
    } catch (const qsched::too_large_error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kTooLarge;
    } catch (const qsched::infeasible_error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kInfeasible;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kRuntimeError;
    }
}
