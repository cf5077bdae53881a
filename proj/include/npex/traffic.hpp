#pragma once

// Synthetic packet-arrival generation and CSV import.
//
// Profiles are piecewise-constant offered rates; arrivals follow either a
// Poisson process (exponential inter-arrival, the default) or a fixed
// inter-arrival ("uniform"). Generation is deterministic per seed.

#include <cmath>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace npex::traffic {

class TrafficError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Packet {
    double time_us = 0.0;
    std::uint32_t size_bits = 0;
    std::uint16_t port = 0;
    double completion_us = -1.0; // set when the packet is forwarded
};

/// splitmix64 — small, fast, identical output on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double exponential(double mean) { return -mean * std::log1p(-next_unit()); }

private:
    std::uint64_t state_;
};

struct TrafficProfile {
    struct Segment {
        double duration_us = 0.0;
        double rate_mbps = 0.0;
    };
    struct SizePoint {
        std::uint32_t bits = 512;
        double weight = 1.0;
    };
    enum class Process { poisson, uniform };

    std::string name = "custom";
    std::vector<Segment> segments;
    std::vector<SizePoint> size_mix{{512, 1.0}}; // single entry = fixed size
    Process process = Process::poisson;
    int ports = 16;
    std::uint64_t seed = 1;

    void validate() const {
        if (segments.empty()) throw TrafficError("traffic profile has no segments");
        for (const auto& s : segments) {
            if (!(s.duration_us > 0.0)) throw TrafficError("segment duration must be > 0");
            if (s.rate_mbps < 0.0) throw TrafficError("segment rate must be >= 0");
        }
        if (size_mix.empty()) throw TrafficError("packet size mix is empty");
        double total = 0.0;
        for (const auto& p : size_mix) {
            if (p.bits == 0) throw TrafficError("packet size must be > 0 bits");
            if (p.weight < 0.0) throw TrafficError("size weight must be >= 0");
            total += p.weight;
        }
        if (std::abs(total - 1.0) > 1e-9) throw TrafficError("size mix weights must sum to 1");
        if (ports <= 0) throw TrafficError("port count must be > 0");
    }

    double mean_packet_bits() const {
        double m = 0.0;
        for (const auto& p : size_mix) m += static_cast<double>(p.bits) * p.weight;
        return m;
    }

    /// The built-in sampled-rate profiles: high 1400, medium 900, low 400 Mbps,
    /// 512-bit packets, Poisson arrivals.
    static TrafficProfile named(const std::string& name, double duration_us, std::uint64_t seed) {
        double rate;
        if (name == "high") rate = 1400.0;
        else if (name == "medium") rate = 900.0;
        else if (name == "low") rate = 400.0;
        else throw TrafficError("unknown traffic profile '" + name + "'");
        TrafficProfile p;
        p.name = name;
        p.segments.push_back({duration_us, rate});
        p.seed = seed;
        return p;
    }
};

namespace detail {

inline std::uint32_t draw_size(const TrafficProfile& profile, Rng& rng) {
    if (profile.size_mix.size() == 1) return profile.size_mix.front().bits;
    double u = rng.next_unit();
    double acc = 0.0;
    for (const auto& p : profile.size_mix) {
        acc += p.weight;
        if (u < acc) return p.bits;
    }
    return profile.size_mix.back().bits;
}

} // namespace detail

/// Generates the arrival sequence for a profile: deterministic per seed,
/// times non-decreasing, ports assigned round-robin.
inline std::vector<Packet> generate(const TrafficProfile& profile) {
    profile.validate();
    Rng rng(profile.seed);
    std::vector<Packet> out;
    double seg_start = 0.0;
    int port = 0;
    for (const auto& seg : profile.segments) {
        const double seg_end = seg_start + seg.duration_us;
        if (seg.rate_mbps > 0.0) {
            const double mean_gap_us = profile.mean_packet_bits() / seg.rate_mbps; // bits / (bits/us)
            if (profile.process == TrafficProfile::Process::uniform) {
                for (std::uint64_t k = 0;; ++k) {
                    double t = seg_start + static_cast<double>(k) * mean_gap_us;
                    if (t >= seg_end) break;
                    out.push_back({t, detail::draw_size(profile, rng), static_cast<std::uint16_t>(port), -1.0});
                    port = (port + 1) % profile.ports;
                }
            } else {
                double t = seg_start + rng.exponential(mean_gap_us);
                while (t < seg_end) {
                    out.push_back({t, detail::draw_size(profile, rng), static_cast<std::uint16_t>(port), -1.0});
                    port = (port + 1) % profile.ports;
                    t += rng.exponential(mean_gap_us);
                }
            }
        }
        seg_start = seg_end;
    }
    return out;
}

/// Imports `time_us,size_bits,port` rows. Rows must be time-sorted.
inline std::vector<Packet> import_csv(std::istream& in) {
    std::vector<Packet> out;
    std::string line;
    std::size_t line_no = 0;
    double last_time = -1.0;
    while (std::getline(in, line)) {
        ++line_no;
        // strip whitespace and skip blanks/comments/an optional header row
        std::size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r\n");
        std::string row = line.substr(b, e - b + 1);
        if (row[0] == '#' || row == "time_us,size_bits,port") continue;

        double time_us;
        long size_bits, port;
        char extra;
        int n = std::sscanf(row.c_str(), "%lf ,%ld ,%ld %c", &time_us, &size_bits, &port, &extra);
        if (n != 3 || size_bits <= 0 || port < 0)
            throw TrafficError("arrival CSV row " + std::to_string(line_no) + ": malformed row '" + row + "'");
        if (time_us < last_time)
            throw TrafficError("arrival CSV row " + std::to_string(line_no) + ": timestamps decrease");
        last_time = time_us;
        out.push_back({time_us, static_cast<std::uint32_t>(size_bits), static_cast<std::uint16_t>(port), -1.0});
    }
    return out;
}

} // namespace npex::traffic
