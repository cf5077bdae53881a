#pragma once

// Flat key = value configuration files for the simulator and traffic setup.
// '#' starts a comment; unknown keys are rejected by name.

#include "npex/sim.hpp"
#include "npex/traffic.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <string>

namespace npex::config {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Traffic setup resolved from config keys; turned into an arrival sequence
/// once the simulation length and seed are known.
struct TrafficSpec {
    std::string profile = "medium"; // high | medium | low | custom
    double rate_mbps = 900.0;       // custom profile only
    double duration_us = -1.0;      // <0: 90% of the simulated window
    int packet_bits = 512;
    traffic::TrafficProfile::Process process = traffic::TrafficProfile::Process::poisson;
    std::string segments; // custom: "rate:duration;rate:duration;..."
    std::string csv_path; // import instead of generating

    traffic::TrafficProfile resolve(const sim::NpuConfig& cfg, std::uint64_t seed) const {
        double duration = duration_us > 0 ? duration_us : 0.9 * cfg.duration_us();
        traffic::TrafficProfile p;
        if (profile == "custom") {
            p.name = "custom";
            if (!segments.empty()) {
                std::stringstream ss(segments);
                std::string seg;
                while (std::getline(ss, seg, ';')) {
                    auto colon = seg.find(':');
                    if (colon == std::string::npos)
                        throw ConfigError("traffic.segments entry '" + seg + "' is not rate:duration");
                    p.segments.push_back({std::stod(seg.substr(colon + 1)), 0.0});
                    p.segments.back().rate_mbps = std::stod(seg.substr(0, colon));
                }
            } else {
                p.segments.push_back({duration, rate_mbps});
            }
        } else {
            p = traffic::TrafficProfile::named(profile, duration, seed);
        }
        p.size_mix = {{static_cast<std::uint32_t>(packet_bits), 1.0}};
        p.process = process;
        p.ports = cfg.ports;
        p.seed = seed;
        return p;
    }
};

struct RunConfig {
    sim::NpuConfig npu;
    TrafficSpec traffic;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct KeyValue {
    std::string key, value;
    std::size_t line;
};

inline std::vector<KeyValue> parse_entries(std::istream& in) {
    std::vector<KeyValue> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string body = trim(line);
        if (body.empty()) continue;
        auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        KeyValue kv{trim(body.substr(0, eq)), trim(body.substr(eq + 1)), line_no};
        if (kv.key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        entries.push_back(std::move(kv));
    }
    return entries;
}

inline long to_long(const KeyValue& kv) {
    long v = 0;
    auto [p, ec] = std::from_chars(kv.value.data(), kv.value.data() + kv.value.size(), v);
    if (ec != std::errc{} || p != kv.value.data() + kv.value.size())
        throw ConfigError("config key '" + kv.key + "': '" + kv.value + "' is not an integer");
    return v;
}

inline double to_double(const KeyValue& kv) {
    try {
        std::size_t pos = 0;
        double v = std::stod(kv.value, &pos);
        if (pos != kv.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + kv.key + "': '" + kv.value + "' is not a number");
    }
}

} // namespace detail

/// Parses a config stream into simulator + traffic settings, starting from
/// defaults. Unknown keys fail with the offending key name.
inline RunConfig parse_config(std::istream& in) {
    RunConfig rc;
    bool profile_overridden = false;

    for (const auto& kv : detail::parse_entries(in)) {
        const std::string& k = kv.key;
        auto& npu = rc.npu;
        if (k == "sim.num_mes") npu.num_mes = static_cast<int>(detail::to_long(kv));
        else if (k == "sim.threads_per_me") npu.threads_per_me = static_cast<int>(detail::to_long(kv));
        else if (k == "sim.receive_mes") npu.receive_mes = static_cast<int>(detail::to_long(kv));
        else if (k == "sim.ports") npu.ports = static_cast<int>(detail::to_long(kv));
        else if (k == "sim.sram_latency_cycles") npu.sram_latency_cycles = static_cast<int>(detail::to_long(kv));
        else if (k == "sim.sdram_latency_cycles") npu.sdram_latency_cycles = static_cast<int>(detail::to_long(kv));
        else if (k == "sim.sram_bus_cycles") npu.sram_bus_cycles = static_cast<int>(detail::to_long(kv));
        else if (k == "sim.sdram_bus_cycles") npu.sdram_bus_cycles = static_cast<int>(detail::to_long(kv));
        else if (k == "sim.queue_capacity") npu.queue_capacity = static_cast<int>(detail::to_long(kv));
        else if (k == "sim.length_cycles") npu.sim_length_cycles = detail::to_long(kv);
        else if (k == "sim.seed") npu.seed = static_cast<std::uint64_t>(detail::to_long(kv));
        else if (k == "workload.profile") {
            npu.profile = sim::WorkloadProfile::builtin(kv.value);
            profile_overridden = false;
        } else if (k == "workload.compute_cycles") {
            npu.profile.compute_cycles = static_cast<int>(detail::to_long(kv));
            profile_overridden = true;
        } else if (k == "workload.sram_accesses") {
            npu.profile.sram_accesses = static_cast<int>(detail::to_long(kv));
            profile_overridden = true;
        } else if (k == "workload.sdram_accesses") {
            npu.profile.sdram_accesses = static_cast<int>(detail::to_long(kv));
            profile_overridden = true;
        } else if (k == "workload.poll_cycles") {
            npu.profile.poll_cycles = static_cast<int>(detail::to_long(kv));
            profile_overridden = true;
        } else if (k == "power.k_dyn") npu.power.k_dyn = detail::to_double(kv);
        else if (k == "power.alpha_idle") npu.power.alpha_idle = detail::to_double(kv);
        else if (k == "power.k_static") npu.power.k_static = detail::to_double(kv);
        else if (k == "power.adder_energy_uj") npu.power.adder_energy_uj = detail::to_double(kv);
        else if (k == "dvs.policy") {
            if (kv.value == "none") npu.policy.kind = sim::PolicyKind::none;
            else if (kv.value == "tdvs") npu.policy.kind = sim::PolicyKind::tdvs;
            else if (kv.value == "edvs") npu.policy.kind = sim::PolicyKind::edvs;
            else throw ConfigError("config key 'dvs.policy': unknown policy '" + kv.value + "'");
        } else if (k == "tdvs.top_threshold_mbps") npu.policy.tdvs_top_threshold_mbps = static_cast<int>(detail::to_long(kv));
        else if (k == "tdvs.window_kcycles") npu.policy.tdvs_window_cycles = detail::to_long(kv) * 1000;
        else if (k == "edvs.idle_threshold") npu.policy.edvs_idle_threshold = detail::to_double(kv);
        else if (k == "edvs.window_kcycles") npu.policy.edvs_window_cycles = detail::to_long(kv) * 1000;
        else if (k == "monitor.window_kcycles") npu.monitor_window_cycles = detail::to_long(kv) * 1000;
        else if (k == "trace.events") {
            npu.emit = sim::EmissionFilter{false, false, false, false};
            std::stringstream ss(kv.value);
            std::string kind;
            while (std::getline(ss, kind, ',')) {
                kind = detail::trim(kind);
                if (kind == "fifo") npu.emit.fifo = true;
                else if (kind == "forward") npu.emit.forward = true;
                else if (kind == "idle") npu.emit.idle = true;
                else if (kind == "pipeline") npu.emit.pipeline = true;
                else if (!kind.empty())
                    throw ConfigError("config key 'trace.events': unknown event kind '" + kind + "'");
            }
        } else if (k == "traffic.profile") rc.traffic.profile = kv.value;
        else if (k == "traffic.rate_mbps") rc.traffic.rate_mbps = detail::to_double(kv);
        else if (k == "traffic.duration_us") rc.traffic.duration_us = detail::to_double(kv);
        else if (k == "traffic.packet_bits") rc.traffic.packet_bits = static_cast<int>(detail::to_long(kv));
        else if (k == "traffic.process") {
            if (kv.value == "poisson") rc.traffic.process = traffic::TrafficProfile::Process::poisson;
            else if (kv.value == "uniform") rc.traffic.process = traffic::TrafficProfile::Process::uniform;
            else throw ConfigError("config key 'traffic.process': unknown process '" + kv.value + "'");
        } else if (k == "traffic.segments") {
            rc.traffic.segments = kv.value;
            rc.traffic.profile = "custom";
        } else if (k == "traffic.csv") rc.traffic.csv_path = kv.value;
        else throw ConfigError("unknown config key '" + k + "' (line " + std::to_string(kv.line) + ")");
    }
    if (profile_overridden && rc.npu.profile.name != "custom") rc.npu.profile.name += "*";
    return rc;
}

} // namespace npex::config
