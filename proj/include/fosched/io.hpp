#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fosched/core.hpp"

namespace fosched {

// Instance files:  {"name": "...", "jobs": [{"p": 1, "d": 1}, ...]}
// Schedules:       {"machines": m, "assignment": [1, 2, 1, ...]}   (1-based)
namespace io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace detail {

inline Time as_time(const json& value, const std::string& where) {
    if (!value.is_number_integer()) throw input_error(where + " must be an integer");
    if (value.is_number_unsigned() &&
        value.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<Time>::max())) {
        throw input_error(where + " is out of range");
    }
    return value.get<Time>();
}

}  // namespace detail

inline ordered_json to_json(const Instance& instance) {
    ordered_json out = ordered_json::object();
    if (!instance.name().empty()) out["name"] = instance.name();
    auto jobs = ordered_json::array();
    for (const auto& job : instance) jobs.push_back({{"p", job.p}, {"d", job.d}});
    out["jobs"] = std::move(jobs);
    return out;
}

inline Instance instance_from_json(const json& doc) {
    if (!doc.is_object()) throw input_error("instance must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "jobs" && key != "name") throw input_error("unexpected instance key '" + key + "'");
    }
    if (!doc.contains("jobs") || !doc["jobs"].is_array()) {
        throw input_error("instance needs a \"jobs\" array");
    }
    std::string name;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw input_error("\"name\" must be a string");
        name = doc["name"].get<std::string>();
    }
    std::vector<Job> jobs;
    const auto& array = doc["jobs"];
    jobs.reserve(array.size());
    for (std::size_t j = 0; j < array.size(); ++j) {
        const auto& item = array[j];
        const auto where = "jobs[" + std::to_string(j) + "]";
        if (!item.is_object() || item.size() != 2 || !item.contains("p") || !item.contains("d")) {
            throw input_error(where + " must be an object with exactly \"p\" and \"d\"");
        }
        Job job{detail::as_time(item["p"], where + ".p"), detail::as_time(item["d"], where + ".d")};
        try {
            validate(job);
        } catch (const input_error& e) {
            throw input_error(where + ": " + e.what());
        }
        jobs.push_back(job);
    }
    return Instance(std::move(jobs), std::move(name));
}

inline ordered_json to_json(const Schedule& schedule) {
    ordered_json out = ordered_json::object();
    out["machines"] = schedule.machine_count();
    auto assignment = ordered_json::array();
    for (auto m : schedule.assignment()) assignment.push_back(m + 1);
    out["assignment"] = std::move(assignment);
    return out;
}

inline Schedule schedule_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("assignment") || !doc["assignment"].is_array()) {
        throw input_error("schedule needs an \"assignment\" array");
    }
    std::vector<std::size_t> labels;
    for (const auto& v : doc["assignment"]) {
        const auto m = detail::as_time(v, "assignment entry");
        if (m < 1) throw input_error("machine indices are 1-based");
        labels.push_back(static_cast<std::size_t>(m - 1));
    }
    auto schedule = Schedule::from_canonical(std::move(labels));
    if (doc.contains("machines")) {
        const auto m = detail::as_time(doc["machines"], "machines");
        if (static_cast<std::size_t>(m) != schedule.machine_count()) {
            throw input_error("\"machines\" is " + std::to_string(m) + " but assignment uses " +
                              std::to_string(schedule.machine_count()));
        }
    }
    return schedule;
}

inline std::string dump_instance(const Instance& instance) { return to_json(instance).dump(2) + "\n"; }

inline Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    return instance_from_json(doc);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write " + path.string());
    out << text;
}

inline Instance read_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

inline void write_instance(const std::filesystem::path& path, const Instance& instance) {
    write_file(path, dump_instance(instance));
}

}  // namespace io
}  // namespace fosched
