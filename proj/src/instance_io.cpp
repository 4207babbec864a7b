#include <qsched/errors.hpp>
#include <qsched/instance_io.hpp>

#include "json.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace qsched {

namespace {

using ojson = nlohmann::ordered_json;

std::size_t line_of(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + std::size_t(std::count(text.begin(), text.begin() + std::ptrdiff_t(byte), '\n'));
}

const ojson& member(const ojson& obj, const char* key, const std::string& path)
{
    if (!obj.is_object()) {
        throw parse_error(fmt::format("{}: expected an object", path));
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw parse_error(fmt::format("{}.{}: missing field", path, key));
    }
    return *it;
}

double number(const ojson& obj, const char* key, const std::string& path)
{
    const auto& v = member(obj, key, path);
    if (!v.is_number()) {
        throw parse_error(fmt::format("{}.{}: expected a number", path, key));
    }
    return v.get<double>();
}

std::optional<double> optional_number(const ojson& obj, const char* key, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_number()) {
        throw parse_error(fmt::format("{}.{}: expected a number", path, key));
    }
    return it->get<double>();
}

const ojson& array(const ojson& obj, const char* key)
{
    const auto& v = member(obj, key, "$");
    if (!v.is_array()) {
        throw parse_error(fmt::format("$.{}: expected an array", key));
    }
    return v;
}

} // namespace

std::string instance_to_json(const Instance& instance)
{
    ojson doc;
    doc["version"] = kInstanceSchemaVersion;

    ojson vms = ojson::array();
    for (const auto& vm : instance.vms) {
        ojson v;
        v["cpu_mips"] = vm.cpu;
        v["mem_mb"] = vm.mem;
        v["stor_gb"] = vm.stor;
        v["bw_mbps"] = vm.comm;
        v["cpu_cost"] = vm.cpu_cost;
        v["mem_cost"] = vm.mem_cost;
        v["stor_cost"] = vm.stor_cost;
        v["bw_cost"] = vm.comm_cost;
        vms.push_back(std::move(v));
    }
    doc["vms"] = std::move(vms);

    ojson tasks = ojson::array();
    for (const auto& t : instance.tasks) {
        ojson v;
        v["length_mi"] = t.instruction_count;
        v["file_size_mb"] = t.data_size;
        v["output_size_mb"] = t.output_size;
        v["req_cpu_mips"] = t.req_cpu;
        v["req_mem_mb"] = t.req_mem;
        v["req_stor_gb"] = t.req_stor;
        v["req_bw_mbps"] = t.req_comm;
        tasks.push_back(std::move(v));
    }
    doc["tasks"] = std::move(tasks);

    const auto& w = instance.weights;
    doc["weights"] = {{"w_time", w.w_time}, {"w_cost", w.w_cost}, {"w_load", w.w_load},
                      {"lw_cpu", w.lw_cpu}, {"lw_mem", w.lw_mem}, {"lw_bw", w.lw_bw}};

    ojson caps = ojson::object();
    if (instance.caps.max_time) {
        caps["max_time_s"] = *instance.caps.max_time;
    }
    if (instance.caps.budget) {
        caps["budget"] = *instance.caps.budget;
    }
    doc["caps"] = std::move(caps);

    const auto& s = instance.scales;
    doc["scales"] = {{"time", s.time}, {"cost", s.cost}, {"load", s.load}};

    return doc.dump(2) + "\n";
}

Instance instance_from_json(std::string_view text)
{
    ojson doc;
    try {
        doc = ojson::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
        throw parse_error(fmt::format("line {}: malformed JSON: {}", line, e.what()), line);
    }
    if (!doc.is_object()) {
        throw parse_error("$: instance document must be a JSON object");
    }

    const auto& version = member(doc, "version", "$");
    if (!version.is_number_integer()) {
        throw parse_error("$.version: expected an integer");
    }
    if (version.get<int>() != kInstanceSchemaVersion) {
        throw schema_version_error(fmt::format("$.version: schema version {} is not supported (expected {})",
                                               version.get<int>(), kInstanceSchemaVersion));
    }

    Instance inst;
    const auto& vms = array(doc, "vms");
    for (std::size_t i = 0; i < vms.size(); ++i) {
        const auto path = fmt::format("$.vms[{}]", i);
        const auto& v = vms[i];
        inst.vms.push_back(VmSpec{number(v, "cpu_mips", path), number(v, "mem_mb", path),
                                  number(v, "stor_gb", path), number(v, "bw_mbps", path),
                                  number(v, "cpu_cost", path), number(v, "mem_cost", path),
                                  number(v, "stor_cost", path), number(v, "bw_cost", path)});
    }

    const auto& tasks = array(doc, "tasks");
    for (std::size_t j = 0; j < tasks.size(); ++j) {
        const auto path = fmt::format("$.tasks[{}]", j);
        const auto& v = tasks[j];
        TaskSpec t;
        t.instruction_count = number(v, "length_mi", path);
        t.data_size = number(v, "file_size_mb", path);
        t.output_size = number(v, "output_size_mb", path);
        t.req_cpu = number(v, "req_cpu_mips", path);
        t.req_mem = number(v, "req_mem_mb", path);
        t.req_stor = number(v, "req_stor_gb", path);
        t.req_comm = number(v, "req_bw_mbps", path);
        inst.tasks.push_back(t);
    }

    const auto& w = member(doc, "weights", "$");
    inst.weights = QosWeights{number(w, "w_time", "$.weights"), number(w, "w_cost", "$.weights"),
                              number(w, "w_load", "$.weights"), number(w, "lw_cpu", "$.weights"),
                              number(w, "lw_mem", "$.weights"), number(w, "lw_bw", "$.weights")};

    if (auto it = doc.find("caps"); it != doc.end()) {
        if (!it->is_object()) {
            throw parse_error("$.caps: expected an object");
        }
        inst.caps.max_time = optional_number(*it, "max_time_s", "$.caps");
        inst.caps.budget = optional_number(*it, "budget", "$.caps");
    }
    if (auto it = doc.find("scales"); it != doc.end()) {
        inst.scales = ObjectiveScales{number(*it, "time", "$.scales"), number(*it, "cost", "$.scales"),
                                      number(*it, "load", "$.scales")};
    }

    try {
        validate(inst);
    } catch (const invalid_argument_error& e) {
        throw parse_error(fmt::format("invalid instance: {}", e.what()));
    }
    return inst;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}' for reading", path.string()));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) {
        throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
    }
}

void save_instance(const Instance& instance, const std::filesystem::path& path)
{
    write_file(path, instance_to_json(instance));
}

Instance load_instance(const std::filesystem::path& path)
{
    return instance_from_json(read_file(path));
}

std::string fnv1a_hex(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

} // namespace qsched
