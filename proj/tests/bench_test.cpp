#include <qsched/bench.hpp>
#include <qsched/errors.hpp>

#include <gtest/gtest.h>

#include <map>

using namespace qsched;

namespace {

BenchOptions small_sweep()
{
    BenchOptions o;
    o.task_counts = {4, 8, 12};
    o.solvers = {"bnb", "ga", "brute"};
    o.seeds = 5;
    return o;
}

std::vector<BenchRecord> without_clock(std::vector<BenchRecord> rows)
{
    for (auto& r : rows) {
        r.wall_clock_ms = 0.0;
    }
    return rows;
}

const std::vector<BenchRecord>& sweep_rows()
{
    static const auto rows = run_bench(small_sweep());
    return rows;
}

} // namespace

TEST(Bench, OneRowPerCell)
{
    const auto& rows = sweep_rows();
    ASSERT_EQ(rows.size(), 45u);
    // Ordered by n, then solver, then seed.
    std::size_t k = 0;
    for (std::size_t n : {4, 8, 12}) {
        for (const char* s : {"bnb", "ga", "brute"}) {
            for (std::uint64_t seed = 0; seed < 5; ++seed, ++k) {
                EXPECT_EQ(rows[k].n_tasks, n);
                EXPECT_EQ(rows[k].solver, s);
                EXPECT_EQ(rows[k].seed, seed);
            }
        }
    }
}

TEST(Bench, BnbMatchesBruteForceOnSmallCells)
{
    std::map<std::pair<std::size_t, std::uint64_t>, double> brute;
    for (const auto& r : sweep_rows()) {
        if (r.solver == "brute" && r.status == "ok") {
            brute[{r.n_tasks, r.seed}] = r.scalar;
        }
    }
    int compared = 0;
    for (const auto& r : sweep_rows()) {
        if (r.solver == "bnb" && r.n_tasks <= 8) {
            ASSERT_EQ(r.status, "ok");
            EXPECT_TRUE(r.proven_optimal);
            EXPECT_NEAR(r.scalar, brute.at({r.n_tasks, r.seed}), 1e-9 * std::max(1.0, r.scalar));
            ++compared;
        }
        if (r.solver == "ga") {
            EXPECT_EQ(r.nodes_or_generations, 100u);
            EXPECT_FALSE(r.proven_optimal);
        }
        if (r.solver == "brute" && r.n_tasks == 12) {
            EXPECT_EQ(r.status, "too_large");
        }
    }
    EXPECT_EQ(compared, 10);
}

TEST(Bench, RowsRepeatExceptForTheClock)
{
    EXPECT_EQ(without_clock(run_bench(small_sweep())), without_clock(sweep_rows()));
}

TEST(Bench, ParallelRunMatchesSerial)
{
    auto o = small_sweep();
    o.jobs = 4;
    EXPECT_EQ(without_clock(run_bench(o)), without_clock(sweep_rows()));
}

TEST(Bench, CellsAboveTheBnbLimitAreSkipped)
{
    BenchOptions o;
    o.task_counts = {3, 6};
    o.solvers = {"bnb"};
    o.seeds = 2;
    o.bnb_max_tasks = 4;
    const auto rows = run_bench(o);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].status, "ok");
    EXPECT_EQ(rows[3].status, "skipped");
}

TEST(Bench, CellInstanceDependsOnlyOnSizeAndSeed)
{
    BenchOptions o;
    o.task_counts = {5};
    EXPECT_EQ(bench_instance(o, 5, 3), bench_instance(o, 5, 3));
    EXPECT_NE(bench_instance(o, 5, 3), bench_instance(o, 5, 4));
    EXPECT_EQ(bench_instance(o, 5, 3), generate_instance(5, o.preset, 3, o.weights));
}

TEST(Bench, NormalizedScalarNearOneForRoundRobin)
{
    BenchOptions o;
    o.task_counts = {6};
    o.normalize = true;
    const auto inst = bench_instance(o, 6, 2);
    const auto e = evaluate(inst, round_robin_assignment(inst));
    EXPECT_NEAR(e.scalar, 1.0, 1e-12);
}

TEST(Bench, RejectsBadOptions)
{
    BenchOptions o;
    o.task_counts = {3};
    o.solvers = {"simplex"};
    EXPECT_THROW(validate(o), invalid_argument_error);
    o.solvers = {};
    EXPECT_THROW(validate(o), invalid_argument_error);
    o.solvers = {"ga"};
    o.task_counts = {};
    EXPECT_THROW(validate(o), invalid_argument_error);
}

TEST(BenchCsv, RoundTrip)
{
    const auto text = bench_to_csv(sweep_rows());
    EXPECT_EQ(text.substr(0, kBenchCsvHeader.size()), kBenchCsvHeader);
    const auto back = bench_from_csv(text);
    ASSERT_EQ(back.size(), sweep_rows().size());
    for (std::size_t k = 0; k < back.size(); ++k) {
        auto a = back[k], b = sweep_rows()[k];
        // The clock is written with three decimals.
        EXPECT_NEAR(a.wall_clock_ms, b.wall_clock_ms, 1e-3);
        a.wall_clock_ms = b.wall_clock_ms = 0.0;
        EXPECT_EQ(a, b);
    }
    EXPECT_EQ(bench_to_csv(back), text);
}

TEST(BenchCsv, BadInputRejected)
{
    EXPECT_THROW(bench_from_csv("a,b,c\n"), parse_error);
    EXPECT_THROW(bench_from_csv(std::string(kBenchCsvHeader) + "\n1,bnb,1,2\n"), parse_error);
    EXPECT_THROW(bench_from_csv(std::string(kBenchCsvHeader) + "\nx,bnb,1,2,3,4,5,6,7,true,ok\n"), parse_error);
    EXPECT_TRUE(bench_from_csv(std::string(kBenchCsvHeader) + "\n").empty());
}

TEST(BenchCharts, PureFunctionOfTheCsv)
{
    const auto text = bench_to_csv(sweep_rows());
    const auto a = render_charts(text);
    const auto b = render_charts(text);
    EXPECT_EQ(a.time_svg, b.time_svg);
    EXPECT_EQ(a.cost_svg, b.cost_svg);
    EXPECT_EQ(a.load_svg, b.load_svg);
    for (const auto* svg : {&a.time_svg, &a.cost_svg, &a.load_svg}) {
        EXPECT_NE(svg->find("<svg"), std::string::npos);
        EXPECT_NE(svg->find("</svg>"), std::string::npos);
        for (const char* s : {"bnb", "ga", "brute"}) {
            EXPECT_NE(svg->find(std::string(">") + s + "<"), std::string::npos) << s;
        }
    }
    EXPECT_NE(a.time_svg, a.cost_svg);
    const auto empty = render_charts(std::string(kBenchCsvHeader) + "\n");
    EXPECT_NE(empty.time_svg.find("</svg>"), std::string::npos);
}
