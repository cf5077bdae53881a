#pragma once

// Voltage/frequency table and the two scaling policies.
//
// TDVS steps the chip-wide VF level on aggregate port traffic per monitor
// window; EDVS steps each microengine independently on its idle-time
// fraction. Both move at most one level per window and clamp at the table
// bounds. Decision functions are pure.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace npex::dvs {

struct VfOperatingPoint {
    int frequency_mhz = 0;
    double voltage = 0.0;
};

/// Ordered operating points, level 0 highest. The built-in table is the
/// XScale-style ladder 600MHz/1.3V down to 400MHz/1.1V in 50MHz/0.05V steps.
class VfTable {
public:
    VfTable() : VfTable(default_levels()) {}
    explicit VfTable(std::vector<VfOperatingPoint> levels) : levels_(std::move(levels)) {
        if (levels_.empty()) throw std::invalid_argument("VF table must have at least one level");
        for (std::size_t k = 1; k < levels_.size(); ++k)
            if (levels_[k].frequency_mhz >= levels_[k - 1].frequency_mhz)
                throw std::invalid_argument("VF table frequencies must strictly decrease");
    }

    std::size_t size() const { return levels_.size(); }
    const VfOperatingPoint& at(std::size_t level) const { return levels_.at(level); }
    std::size_t highest_level() const { return 0; }
    std::size_t lowest_level() const { return levels_.size() - 1; }
    int top_frequency_mhz() const { return levels_.front().frequency_mhz; }

private:
    static std::vector<VfOperatingPoint> default_levels() {
        std::vector<VfOperatingPoint> levels;
        for (int f = 600; f >= 400; f -= 50) {
            // (110 + 5k)/100 keeps the voltages exactly 1.3, 1.25, ... 1.1
            int k = (f - 400) / 50;
            levels.push_back({f, static_cast<double>(110 + 5 * k) / 100.0});
        }
        return levels;
    }

    std::vector<VfOperatingPoint> levels_;
};

/// Per-level traffic threshold: floor(top * frequency / top_frequency).
/// For a 1000 Mbps top threshold this gives 1000, 916, 833, 750, 666.
inline int threshold_for_level(int top_threshold_mbps, int frequency_mhz, int top_frequency_mhz = 600) {
    if (frequency_mhz <= 0 || top_frequency_mhz <= 0) throw std::invalid_argument("frequency must be positive");
    return static_cast<int>(static_cast<std::int64_t>(top_threshold_mbps) * frequency_mhz / top_frequency_mhz);
}

enum class Direction { up, down, hold };

struct DvsDecision {
    Direction direction = Direction::hold;
    std::size_t new_level = 0;
};

struct TdvsPolicy {
    int top_threshold_mbps = 1000;
    std::int64_t window_cycles = 20000; // reference-clock (600 MHz) cycles
    VfTable table;

    int threshold_at(std::size_t level) const {
        return threshold_for_level(top_threshold_mbps, table.at(level).frequency_mhz, table.top_frequency_mhz());
    }
};

struct EdvsPolicy {
    double idle_threshold = 0.10;
    std::int64_t window_cycles = 20000;
    std::size_t num_levels = 5;
};

namespace detail {

inline DvsDecision step(Direction dir, std::size_t current, std::size_t lowest) {
    // level 0 is the highest frequency, so "down" increases the index
    if (dir == Direction::down && current < lowest) return {Direction::down, current + 1};
    if (dir == Direction::up && current > 0) return {Direction::up, current - 1};
    return {Direction::hold, current};
}

} // namespace detail

/// Traffic below the current level's threshold scales down one step, above
/// scales up one step, exactly at it holds.
inline DvsDecision tdvs_decide(const TdvsPolicy& policy, double window_rate_mbps, std::size_t current_level) {
    const int threshold = policy.threshold_at(current_level);
    if (window_rate_mbps < threshold) return detail::step(Direction::down, current_level, policy.table.lowest_level());
    if (window_rate_mbps > threshold) return detail::step(Direction::up, current_level, policy.table.lowest_level());
    return {Direction::hold, current_level};
}

/// Idle fraction above the threshold scales the ME down, below scales up,
/// exactly at it holds.
inline DvsDecision edvs_decide(const EdvsPolicy& policy, double idle_frac, std::size_t current_level) {
    if (idle_frac > policy.idle_threshold)
        return detail::step(Direction::down, current_level, policy.num_levels - 1);
    if (idle_frac < policy.idle_threshold)
        return detail::step(Direction::up, current_level, policy.num_levels - 1);
    return {Direction::hold, current_level};
}

/// Bits accumulated over a window, as Mbps (1 bit/us == 1 Mbps).
inline double window_rate_mbps(std::uint64_t bits, double duration_us) {
    if (!(duration_us > 0.0)) throw std::invalid_argument("window duration must be > 0");
    return static_cast<double>(bits) / duration_us;
}

/// Monitor-adder energy for one window of packet arrivals.
inline double tdvs_overhead_energy_uj(std::uint64_t packets_in_window, double adder_energy_uj) {
    return static_cast<double>(packets_in_window) * adder_energy_uj;
}

/// TDVS monitor state: bits seen at the device ports this window.
struct TrafficMonitor {
    std::uint64_t bits = 0;
    std::uint64_t packets = 0;

    void on_packet(std::uint64_t size_bits) {
        bits += size_bits;
        ++packets;
    }
    void reset() { bits = packets = 0; }
};

/// EDVS monitor state: one ME's cycle counters for the current window.
struct IdleMonitor {
    std::uint64_t busy_cycles = 0;
    std::uint64_t idle_cycles = 0;
    std::uint64_t stalled_cycles = 0;

    /// Idle share of executed (non-stalled) cycles; 0 for an all-stalled window.
    double idle_fraction() const {
        const std::uint64_t executed = busy_cycles + idle_cycles;
        return executed ? static_cast<double>(idle_cycles) / static_cast<double>(executed) : 0.0;
    }
    std::uint64_t total_cycles() const { return busy_cycles + idle_cycles + stalled_cycles; }
    void reset() { busy_cycles = idle_cycles = stalled_cycles = 0; }
};

} // namespace npex::dvs
