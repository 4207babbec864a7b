#include "cli_support.hpp"

#include <qsched/bench.hpp>
#include <qsched/instance_io.hpp>

#include <gtest/gtest.h>

using namespace qsched;
using qsched::testing::run_cli;

namespace {

class Cli : public ::testing::Test
{
protected:
    void SetUp() override { dir = qsched::testing::scratch_dir("cli"); }
    void TearDown() override { std::filesystem::remove_all(dir); }

    std::string file(const std::string& name) const { return read_file(dir / name); }

    std::filesystem::path dir;
};

std::string field(const std::string& out, const std::string& key)
{
    const auto at = out.find(key + ": ");
    if (at == std::string::npos) {
        return {};
    }
    const auto start = at + key.size() + 2;
    return out.substr(start, out.find('\n', start) - start);
}

} // namespace

TEST_F(Cli, GenIsDeterministic)
{
    const auto a = run_cli(dir, "--seed 9 gen --tasks 10 -o a.json");
    const auto b = run_cli(dir, "--seed 9 gen --tasks 10 -o b.json");
    ASSERT_EQ(a.exit_code, 0);
    ASSERT_EQ(b.exit_code, 0);
    EXPECT_EQ(file("a.json"), file("b.json"));
    EXPECT_NE(a.out.find("fnv1a64:" + fnv1a_hex(file("a.json"))), std::string::npos) << a.out;
    run_cli(dir, "--seed 10 gen --tasks 10 -o c.json");
    EXPECT_NE(file("a.json"), file("c.json"));
}

TEST_F(Cli, GenDefaultsAndOptions)
{
    ASSERT_EQ(run_cli(dir, "gen --tasks 0").exit_code, 0);
    EXPECT_TRUE(load_instance(dir / "instance.json").tasks.empty());
    ASSERT_EQ(run_cli(dir, "--preset section5b --weights 1,0,0 --load-weights 1,0,0 gen --tasks 3 --budget 99 "
                           "-o s.json")
                  .exit_code,
              0);
    const auto inst = load_instance(dir / "s.json");
    EXPECT_EQ(inst.weights.w_time, 1.0);
    EXPECT_EQ(inst.weights.lw_mem, 0.0);
    EXPECT_EQ(inst.caps.budget, 99.0);
    EXPECT_FALSE(inst.caps.max_time);
}

TEST_F(Cli, BruteAndBnbAgree)
{
    ASSERT_EQ(run_cli(dir, "--seed 4 gen --tasks 7").exit_code, 0);
    const auto brute = run_cli(dir, "solve instance.json --algo brute");
    const auto bnb = run_cli(dir, "solve instance.json --algo bnb");
    ASSERT_EQ(brute.exit_code, 0);
    ASSERT_EQ(bnb.exit_code, 0);
    EXPECT_NEAR(std::stod(field(brute.out, "scalar")), std::stod(field(bnb.out, "scalar")), 1e-9);
    EXPECT_EQ(field(bnb.out, "proven_optimal"), "true");
}

TEST_F(Cli, GaRunsRepeat)
{
    ASSERT_EQ(run_cli(dir, "gen --tasks 15").exit_code, 0);
    const auto a = run_cli(dir, "--seed 5 solve instance.json --algo ga --generations 50 -o a.json");
    const auto b = run_cli(dir, "--seed 5 solve instance.json --algo ga --generations 50 -o b.json");
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(qsched::testing::strip_clock(file("a.json")), qsched::testing::strip_clock(file("b.json")));
    EXPECT_EQ(field(a.out, "generations"), "50");
}

TEST_F(Cli, ExitCodes)
{
    ASSERT_EQ(run_cli(dir, "gen --tasks 20 -o big.json").exit_code, 0);
    EXPECT_EQ(run_cli(dir, "solve big.json --algo brute").exit_code, 4);
    ASSERT_EQ(run_cli(dir, "gen --tasks 3 --max-time 0.00001 -o tight.json").exit_code, 0);
    EXPECT_EQ(run_cli(dir, "solve tight.json --algo bnb").exit_code, 3);
    EXPECT_EQ(run_cli(dir, "solve tight.json --algo brute").exit_code, 3);
    EXPECT_EQ(run_cli(dir, "solve tight.json --algo ga").exit_code, 3);
    EXPECT_EQ(run_cli(dir, "solve big.json --algo simplex").exit_code, 2);
    EXPECT_EQ(run_cli(dir, "gen").exit_code, 2);
    EXPECT_EQ(run_cli(dir, "").exit_code, 2);
    EXPECT_EQ(run_cli(dir, "--weights 0.5,0.5,0.5 gen --tasks 2").exit_code, 2);
    EXPECT_EQ(run_cli(dir, "solve big.json --algo ga --mutation 2").exit_code, 2);
    EXPECT_EQ(run_cli(dir, "solve missing.json --algo bnb").exit_code, 1);
    EXPECT_EQ(run_cli(dir, "--help").exit_code, 0);
}

TEST_F(Cli, BenchWritesCsvAndCharts)
{
    const auto r = run_cli(dir, "bench --tasks 3,5 --solvers bnb,ga,brute --seeds 2 -o out");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    const auto rows = bench_from_csv(file("out/bench.csv"));
    EXPECT_EQ(rows.size(), 12u);
    for (const char* name : {"out/time.svg", "out/cost.svg", "out/load.svg"}) {
        EXPECT_NE(file(name).find("</svg>"), std::string::npos);
    }
    EXPECT_NE(r.out.find("records: 12"), std::string::npos);
}
