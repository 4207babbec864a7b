#ifndef QSCHED_WORKLOAD_HPP
#define QSCHED_WORKLOAD_HPP

#include <qsched/model.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsched {

/// Closed interval [lo, hi].
struct Range
{
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
    bool operator==(const Range&) const = default;
};

/// Kilobytes to megabytes.
constexpr double kb_to_mb(double kb) noexcept { return kb / 1024.0; }

/**
 * Sampling ranges. Task fields are always drawn from here; the VM fields are
 * used only by presets without a fixed VM list.
 */
struct GeneratorRanges
{
    // Task side.
    Range length_mi{100.0, 10000.0};
    Range file_size_mb{kb_to_mb(35.0), kb_to_mb(300.0)};
    Range output_size_mb{kb_to_mb(35.0), kb_to_mb(300.0)};
    Range req_cpu_mips{100.0, 1000.0};
    Range req_mem_mb{100.0, 2048.0};
    Range req_stor_gb{1.0, 50.0};
    Range req_bw_mbps{1.0, 10.0};

    // VM side.
    Range cpu_mips{20000.0, 50000.0};
    Range bw_mbps{1.0, 10.0};
    Range mem_mb{3000.0, 5000.0};
    Range stor_gb{100.0, 100.0};
    Range cpu_cost{1.0, 1.0};
    Range mem_cost{1.0, 1.0};
    Range stor_cost{1.0, 1.0};
    Range bw_cost{1.0, 1.0};

    bool operator==(const GeneratorRanges&) const = default;
};

/// Throws invalid_range_error if any lo > hi, lo < 0, or bw_mbps.lo == 0.
void validate(const GeneratorRanges& ranges);

struct HostSpec
{
    double cpu = 0.0; ///< MIPS
    double mem = 0.0; ///< MB
    double bw = 0.0;  ///< MB/s
};

/// A physical host and the VMs carved out of it.
struct NamedConfig
{
    HostSpec host;
    std::vector<VmSpec> vms;
};

/// Throws invalid_argument_error if the VMs declare more memory than the host.
void validate(const NamedConfig& config);

/**
 * The published host and four-VM setup. Missing per-VM values: bandwidth is
 * an equal share of the host (500 MB/s), storage 100 GB, all prices 1.
 */
NamedConfig paper_config();

struct Preset
{
    std::string name;
    std::optional<NamedConfig> fixed; ///< VMs taken verbatim when set
    GeneratorRanges ranges;
    std::size_t vm_count = 4;         ///< VMs drawn when `fixed` is empty
};

/// "table2": fixed VMs of paper_config(). Tasks from the default ranges.
Preset preset_table2();

/// "section5b": four VMs drawn from the MIPS [20000, 50000] / bandwidth ranges.
Preset preset_section5b();

/// Throws invalid_argument_error for an unknown name.
Preset preset_by_name(std::string_view name);

std::vector<std::string> preset_names();

/// Deterministic for a given (n, preset, seed).
Instance generate_instance(std::size_t n, const Preset& preset, std::uint64_t seed,
                           const QosWeights& weights = {});

} // namespace qsched

#endif
