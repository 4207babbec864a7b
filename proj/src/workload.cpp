#include <qsched/errors.hpp>
#include <qsched/rng.hpp>
#include <qsched/workload.hpp>

#include <cmath>
#include <fmt/format.h>

namespace qsched {

namespace {

constexpr std::uint64_t kVmStream = 100;
constexpr std::uint64_t kTaskStream = 101;

void check_range(const Range& r, std::string_view name)
{
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo < 0.0 || r.lo > r.hi) {
        throw invalid_range_error(fmt::format("range {} = [{}, {}] is invalid", name, r.lo, r.hi));
    }
}

double draw(Rng& rng, const Range& r)
{
    return rng.uniform_real(r.lo, r.hi);
}

} // namespace

void validate(const GeneratorRanges& r)
{
    check_range(r.length_mi, "length_mi");
    check_range(r.file_size_mb, "file_size_mb");
    check_range(r.output_size_mb, "output_size_mb");
    check_range(r.req_cpu_mips, "req_cpu_mips");
    check_range(r.req_mem_mb, "req_mem_mb");
    check_range(r.req_stor_gb, "req_stor_gb");
    check_range(r.req_bw_mbps, "req_bw_mbps");
    check_range(r.cpu_mips, "cpu_mips");
    check_range(r.bw_mbps, "bw_mbps");
    check_range(r.mem_mb, "mem_mb");
    check_range(r.stor_gb, "stor_gb");
    check_range(r.cpu_cost, "cpu_cost");
    check_range(r.mem_cost, "mem_cost");
    check_range(r.stor_cost, "stor_cost");
    check_range(r.bw_cost, "bw_cost");
    // Capacities divide.
    if (r.cpu_mips.lo <= 0.0 || r.bw_mbps.lo <= 0.0 || r.mem_mb.lo <= 0.0 || r.stor_gb.lo <= 0.0) {
        throw invalid_range_error("VM capacity ranges must have lo > 0");
    }
}

void validate(const NamedConfig& config)
{
    if (config.vms.empty()) {
        throw invalid_argument_error("named config has no VMs");
    }
    double mem = 0.0;
    for (const auto& vm : config.vms) {
        validate(vm);
        mem += vm.mem;
    }
    if (mem > config.host.mem) {
        throw invalid_argument_error(
            fmt::format("VMs declare {} MB of memory but the host has {} MB", mem, config.host.mem));
    }
}

NamedConfig paper_config()
{
    NamedConfig cfg;
    cfg.host = {150000.0, 256000.0, 2000.0};
    const double bw_share = cfg.host.bw / 4.0;
    auto vm = [&](double mips, double mem_mb) {
        return VmSpec{mips, mem_mb, 100.0, bw_share, 1.0, 1.0, 1.0, 1.0};
    };
    cfg.vms = {vm(1024.0, 4000.0), vm(4096.0, 3000.0), vm(4096.0, 5000.0), vm(4096.0, 5000.0)};
    return cfg;
}

Preset preset_table2()
{
    return {"table2", paper_config(), GeneratorRanges{}, 4};
}

Preset preset_section5b()
{
    return {"section5b", std::nullopt, GeneratorRanges{}, 4};
}

Preset preset_by_name(std::string_view name)
{
    if (name == "table2") {
        return preset_table2();
    }
    if (name == "section5b") {
        return preset_section5b();
    }
    throw invalid_argument_error(fmt::format("unknown preset '{}' (expected table2 or section5b)", name));
}

std::vector<std::string> preset_names()
{
    return {"table2", "section5b"};
}

Instance generate_instance(std::size_t n, const Preset& preset, std::uint64_t seed,
                           const QosWeights& weights)
{
    const auto& r = preset.ranges;
    validate(r);
    validate(weights);

    Instance inst;
    inst.weights = weights;

    if (preset.fixed) {
        validate(*preset.fixed);
        inst.vms = preset.fixed->vms;
    } else {
        if (preset.vm_count == 0) {
            throw invalid_argument_error("preset must define at least one VM");
        }
        auto rng = Rng::stream(seed, kVmStream);
        for (std::size_t i = 0; i < preset.vm_count; ++i) {
            VmSpec vm;
            vm.cpu = draw(rng, r.cpu_mips);
            vm.mem = draw(rng, r.mem_mb);
            vm.stor = draw(rng, r.stor_gb);
            vm.comm = draw(rng, r.bw_mbps);
            vm.cpu_cost = draw(rng, r.cpu_cost);
            vm.mem_cost = draw(rng, r.mem_cost);
            vm.stor_cost = draw(rng, r.stor_cost);
            vm.comm_cost = draw(rng, r.bw_cost);
            inst.vms.push_back(vm);
        }
    }

    auto rng = Rng::stream(seed, kTaskStream);
    inst.tasks.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        TaskSpec t;
        t.instruction_count = draw(rng, r.length_mi);
        t.data_size = draw(rng, r.file_size_mb);
        t.output_size = draw(rng, r.output_size_mb);
        t.req_cpu = draw(rng, r.req_cpu_mips);
        t.req_mem = draw(rng, r.req_mem_mb);
        t.req_stor = draw(rng, r.req_stor_gb);
        t.req_comm = draw(rng, r.req_bw_mbps);
        inst.tasks.push_back(t);
    }
    return inst;
}

} // namespace qsched
