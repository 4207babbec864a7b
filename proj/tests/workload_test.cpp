#include "test_support.hpp"

#include <qsched/errors.hpp>
#include <qsched/instance_io.hpp>
#include <qsched/workload.hpp>

#include <gtest/gtest.h>

#include <filesystem>

using namespace qsched;

TEST(PaperConfig, PublishedValues)
{
    const auto c = paper_config();
    EXPECT_EQ(c.host.cpu, 150000.0);
    EXPECT_EQ(c.host.mem, 256000.0);
    EXPECT_EQ(c.host.bw, 2000.0);
    ASSERT_EQ(c.vms.size(), 4u);
    const double cpu[] = {1024, 4096, 4096, 4096};
    const double mem[] = {4000, 3000, 5000, 5000};
    double total_mem = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(c.vms[i].cpu, cpu[i]);
        EXPECT_EQ(c.vms[i].mem, mem[i]);
        EXPECT_EQ(c.vms[i].comm, 500.0);
        total_mem += c.vms[i].mem;
    }
    EXPECT_LE(total_mem, c.host.mem);
    EXPECT_NO_THROW(validate(c));
}

TEST(PaperConfig, OversubscribedHostRejected)
{
    auto c = paper_config();
    c.host.mem = 1000.0;
    EXPECT_THROW(validate(c), invalid_argument_error);
}

TEST(Generator, ZeroTasks)
{
    const auto inst = generate_instance(0, preset_table2(), 1);
    EXPECT_TRUE(inst.tasks.empty());
    EXPECT_EQ(inst.vms.size(), 4u);
}

TEST(Generator, Table2UsesTheFixedVms)
{
    const auto inst = generate_instance(5, preset_table2(), 1);
    const auto c = paper_config();
    ASSERT_EQ(inst.vms.size(), c.vms.size());
    for (std::size_t i = 0; i < c.vms.size(); ++i) {
        EXPECT_EQ(inst.vms[i].cpu, c.vms[i].cpu);
        EXPECT_EQ(inst.vms[i].mem, c.vms[i].mem);
    }
}

TEST(Generator, SamplesStayInRange)
{
    for (const auto& preset : {preset_table2(), preset_section5b()}) {
        const auto& r = preset.ranges;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto inst = generate_instance(1000, preset, seed);
            for (const auto& t : inst.tasks) {
                ASSERT_TRUE(r.length_mi.contains(t.instruction_count));
                ASSERT_TRUE(r.file_size_mb.contains(t.data_size));
                ASSERT_TRUE(r.output_size_mb.contains(t.output_size));
                ASSERT_TRUE(r.req_cpu_mips.contains(t.req_cpu));
                ASSERT_TRUE(r.req_mem_mb.contains(t.req_mem));
                ASSERT_TRUE(r.req_stor_gb.contains(t.req_stor));
                ASSERT_TRUE(r.req_bw_mbps.contains(t.req_comm));
            }
            EXPECT_NO_THROW(validate(inst));
        }
    }
}

TEST(Generator, Section5bVmRanges)
{
    const auto p = preset_section5b();
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto inst = generate_instance(3, p, seed);
        ASSERT_EQ(inst.vms.size(), p.vm_count);
        for (const auto& vm : inst.vms) {
            ASSERT_TRUE(vm.cpu >= 20000.0 && vm.cpu <= 50000.0);
            ASSERT_TRUE(p.ranges.bw_mbps.contains(vm.comm));
            ASSERT_TRUE(p.ranges.mem_mb.contains(vm.mem));
        }
    }
}

TEST(Generator, SameSeedSameInstance)
{
    const auto a = instance_to_json(generate_instance(30, preset_section5b(), 11));
    EXPECT_EQ(a, instance_to_json(generate_instance(30, preset_section5b(), 11)));
    EXPECT_NE(a, instance_to_json(generate_instance(30, preset_section5b(), 12)));
}

TEST(Generator, PrefixStableAcrossTaskCounts)
{
    // Tasks use their own stream, so a larger n extends a smaller one.
    const auto small = generate_instance(5, preset_section5b(), 4);
    const auto large = generate_instance(9, preset_section5b(), 4);
    for (std::size_t j = 0; j < 5; ++j) {
        EXPECT_EQ(small.tasks[j].instruction_count, large.tasks[j].instruction_count);
    }
    EXPECT_EQ(small.vms[0].cpu, large.vms[0].cpu);
}

TEST(Generator, InvalidRangeRejected)
{
    auto p = preset_table2();
    p.ranges.req_mem_mb = {500.0, 100.0};
    EXPECT_THROW(generate_instance(3, p, 1), invalid_range_error);
    p = preset_section5b();
    p.ranges.bw_mbps = {0.0, 10.0};
    EXPECT_THROW(generate_instance(3, p, 1), invalid_range_error);
}

TEST(Generator, DegenerateRangeIsConstant)
{
    auto p = preset_table2();
    p.ranges.length_mi = {777.0, 777.0};
    for (const auto& t : generate_instance(20, p, 2).tasks) {
        EXPECT_EQ(t.instruction_count, 777.0);
    }
}

TEST(Presets, LookupByName)
{
    EXPECT_EQ(preset_by_name("table2").name, "table2");
    EXPECT_EQ(preset_by_name("section5b").name, "section5b");
    EXPECT_THROW(preset_by_name("nope"), invalid_argument_error);
    EXPECT_EQ(preset_names().size(), 2u);
}

TEST(InstanceJson, RoundTripIsExact)
{
    std::mt19937_64 gen(60);
    for (int k = 0; k < 200; ++k) {
        auto inst = qsched::testing::random_instance(gen, k % 9, 1 + k % 4);
        if (k % 3 == 0) {
            inst.caps.max_time = 1234.5 + k;
        }
        if (k % 4 == 0) {
            inst.caps.budget = 0.1 * k;
        }
        if (k % 5 == 0 && inst.task_count() > 0) {
            inst.scales = round_robin_scales(inst);
        }
        const auto text = instance_to_json(inst);
        const auto back = instance_from_json(text);
        EXPECT_EQ(back, inst);
        EXPECT_EQ(instance_to_json(back), text);
    }
}

TEST(InstanceJson, FileRoundTrip)
{
    const auto path = std::filesystem::temp_directory_path() / "qsched_io_test.json";
    const auto inst = generate_instance(6, preset_table2(), 3);
    save_instance(inst, path);
    EXPECT_EQ(load_instance(path), inst);
    std::filesystem::remove(path);
    EXPECT_THROW(load_instance(path), std::runtime_error);
}

namespace {

std::string sample_json()
{
    return instance_to_json(generate_instance(2, preset_table2(), 1));
}

std::string replace_once(std::string s, const std::string& from, const std::string& to)
{
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return pos == std::string::npos ? s : s.replace(pos, from.size(), to);
}

std::string parse_message(const std::string& text)
{
    try {
        instance_from_json(text);
    } catch (const parse_error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(InstanceJson, WeightSumMustBeOne)
{
    auto text = sample_json();
    const auto at = text.find("\"weights\"");
    ASSERT_NE(at, std::string::npos);
    const auto end = text.find('}', at);
    text.replace(at, end - at + 1,
                 "\"weights\": {\"w_time\": 0.3, \"w_cost\": 0.3, \"w_load\": 0.3, \"lw_cpu\": 1, \"lw_mem\": 1, "
                 "\"lw_bw\": 1}");
    const auto msg = parse_message(text);
    EXPECT_NE(msg.find("0.9"), std::string::npos) << msg;
}

TEST(InstanceJson, NegativeBandwidthRejected)
{
    const auto text = replace_once(sample_json(), "\"bw_mbps\": 500", "\"bw_mbps\": -5");
    const auto msg = parse_message(text);
    EXPECT_FALSE(msg.empty());
}

TEST(InstanceJson, VersionMismatch)
{
    const auto text = replace_once(sample_json(), "\"version\": 1", "\"version\": 2");
    EXPECT_THROW(instance_from_json(text), schema_version_error);
}

TEST(InstanceJson, SyntaxErrorReportsLine)
{
    auto text = sample_json();
    text.insert(text.find("\"tasks\""), "oops ");
    try {
        instance_from_json(text);
        FAIL();
    } catch (const parse_error& e) {
        EXPECT_GT(e.line(), 1u);
    }
}

TEST(InstanceJson, MissingFieldNamesThePath)
{
    auto text = sample_json();
    const auto at = text.find("\"req_mem_mb\"", text.find("\"tasks\""));
    const auto comma = text.find('\n', at);
    text.erase(at, comma - at + 1);
    const auto msg = parse_message(text);
    EXPECT_NE(msg.find("$.tasks[0].req_mem_mb"), std::string::npos) << msg;
}

TEST(Digest, KnownValues)
{
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}
