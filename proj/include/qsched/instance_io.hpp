#ifndef QSCHED_INSTANCE_IO_HPP
#define QSCHED_INSTANCE_IO_HPP

#include <qsched/model.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace qsched {

inline constexpr int kInstanceSchemaVersion = 1;

/**
 * JSON instance document. Field names carry their units:
 *
 *   version
 *   vms[]    {cpu_mips, mem_mb, stor_gb, bw_mbps, cpu_cost, mem_cost, stor_cost, bw_cost}
 *   tasks[]  {length_mi, file_size_mb, output_size_mb, req_cpu_mips, req_mem_mb,
 *             req_stor_gb, req_bw_mbps}
 *   weights  {w_time, w_cost, w_load, lw_cpu, lw_mem, lw_bw}
 *   caps     {max_time_s?, budget?}
 *   scales   {time, cost, load}   optional, defaults to 1
 *
 * Output is deterministic: fixed key order, shortest round-trip doubles.
 */
std::string instance_to_json(const Instance& instance);

/// Throws parse_error (with a line number when available), schema_version_error,
/// or parse_error wrapping an invariant violation.
Instance instance_from_json(std::string_view text);

void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

/// Reads a file into a string; throws std::runtime_error on I/O failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// 64-bit FNV-1a, hex encoded. Used as a content digest.
std::string fnv1a_hex(std::string_view bytes);

} // namespace qsched

#endif
