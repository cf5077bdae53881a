#pragma once

// Event-driven model of an IXP1200-like network processor.
//
// Six multi-threaded microengines share one instruction pipeline each; four
// receive packets dispatched round-robin to their least-loaded threads, two
// drain a shared forward queue. A packet costs the workload profile's
// compute cycles on the pipeline plus its SRAM/SDRAM accesses; accesses go
// through one shared memory controller whose issue bus serializes while the
// access latency itself is fixed in wall time. An ME is idle in a cycle iff
// all of its threads are blocked on memory; threads without a packet spin
// on the queues and count as busy.
//
// Time is kept in integer ticks (198000 per microsecond, the lcm of all VF
// cycle lengths), so cycle grids, window boundaries and the 10 us scaling
// penalty are exact and runs are bit-reproducible.

#include "npex/dvs.hpp"
#include "npex/power.hpp"
#include "npex/trace.hpp"
#include "npex/traffic.hpp"
#include "npex/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace npex::sim {

constexpr std::int64_t kTicksPerUs = 198000; // divisible by every table frequency
constexpr int kRefFreqMhz = 600;
constexpr std::int64_t kRefCycleTicks = kTicksPerUs / kRefFreqMhz;
constexpr double kScalingPenaltyUs = 10.0;
constexpr std::int64_t kScalingPenaltyTicks = 10 * kTicksPerUs;

inline std::int64_t cycle_ticks(int freq_mhz) {
    if (freq_mhz <= 0 || kTicksPerUs % freq_mhz != 0)
        throw std::invalid_argument("unsupported frequency " + std::to_string(freq_mhz) + " MHz");
    return kTicksPerUs / freq_mhz;
}

/// Cycles consumed by the 10 us scaling stall at a given frequency
/// (6000 at 600 MHz, 4000 at 400 MHz).
inline std::int64_t scaling_penalty_cycles(int freq_mhz) { return 10ll * freq_mhz; }

enum class PolicyKind { none, tdvs, edvs };

struct PolicyConfig {
    PolicyKind kind = PolicyKind::none;
    int tdvs_top_threshold_mbps = 1000;
    std::int64_t tdvs_window_cycles = 20000;
    double edvs_idle_threshold = 0.10;
    std::int64_t edvs_window_cycles = 20000;
};

struct EmissionFilter {
    bool fifo = true;
    bool forward = true;
    bool idle = true;
    bool pipeline = false; // one event per issued instruction; opt-in
};

struct NpuConfig {
    int num_mes = 6;
    int threads_per_me = 4;
    int receive_mes = 4; // MEs 0..receive_mes-1 receive, the rest transmit
    int ports = 16;
    int sram_latency_cycles = 26;   // wall-time-fixed, in 600 MHz cycles
    int sdram_latency_cycles = 100;
    int sram_bus_cycles = 5;        // controller issue-bus occupancy per access
    int sdram_bus_cycles = 9;
    int queue_capacity = 256;       // packets waiting to enter receive service
    std::int64_t sim_length_cycles = 8'000'000; // reference-clock cycles
    std::int64_t monitor_window_cycles = 20'000; // idle-stat window when no policy runs
    std::uint64_t seed = 1;
    WorkloadProfile profile = WorkloadProfile::builtin("ipfwdr");
    PowerCoefficients power;
    dvs::VfTable vf_table;
    PolicyConfig policy;
    EmissionFilter emit;

    double duration_us() const { return static_cast<double>(sim_length_cycles) / kRefFreqMhz; }

    std::int64_t window_cycles() const {
        switch (policy.kind) {
        case PolicyKind::tdvs: return policy.tdvs_window_cycles;
        case PolicyKind::edvs: return policy.edvs_window_cycles;
        case PolicyKind::none: return monitor_window_cycles;
        }
        return monitor_window_cycles;
    }

    void validate() const {
        if (num_mes < 2) throw std::invalid_argument("num_mes must be >= 2");
        if (threads_per_me < 1) throw std::invalid_argument("threads_per_me must be >= 1");
        if (receive_mes < 1 || receive_mes >= num_mes)
            throw std::invalid_argument("receive_mes must leave at least one transmit ME");
        if (ports < 1) throw std::invalid_argument("ports must be >= 1");
        if (sram_latency_cycles <= 0 || sdram_latency_cycles <= 0)
            throw std::invalid_argument("memory latencies must be > 0");
        if (sram_bus_cycles < 0 || sdram_bus_cycles < 0)
            throw std::invalid_argument("memory bus cycles must be >= 0");
        if (queue_capacity < 1) throw std::invalid_argument("queue_capacity must be >= 1");
        if (sim_length_cycles <= 0) throw std::invalid_argument("sim_length_cycles must be > 0");
        if (window_cycles() <= 0) throw std::invalid_argument("monitor window must be > 0");
        profile.validate();
        if (policy.kind == PolicyKind::edvs &&
            !(policy.edvs_idle_threshold > 0.0 && policy.edvs_idle_threshold < 1.0))
            throw std::invalid_argument("edvs idle threshold must be in (0,1)");
    }
};

/// The fixed annotation set every emitted trace carries.
inline const std::vector<std::string>& trace_header() {
    static const std::vector<std::string> header = {"cycle",     "time",      "energy", "total_pkt",
                                                    "total_bit", "idle_frac", "p_loss"};
    return header;
}

struct SummaryStats {
    double duration_us = 0.0;
    double energy_uj = 0.0;
    double adder_energy_uj = 0.0;
    double mean_power_w = 0.0;
    std::uint64_t arrived_packets = 0;
    std::uint64_t arrived_bits = 0;
    std::uint64_t forwarded_packets = 0;
    std::uint64_t forwarded_bits = 0;
    std::uint64_t dropped_packets = 0;
    double offered_mbps = 0.0;
    double throughput_mbps = 0.0;
    std::uint64_t vf_transitions = 0; // level-change events (chip-wide change counts once)
    std::uint64_t busy_cycles = 0;
    std::uint64_t idle_cycles = 0;
    std::uint64_t stalled_cycles = 0;
    std::vector<std::uint64_t> me_transitions;
    std::vector<std::uint64_t> me_busy_cycles;
    std::vector<std::uint64_t> me_idle_cycles;
    std::vector<std::uint64_t> me_stalled_cycles;

    double stalled_fraction() const {
        const double total = static_cast<double>(busy_cycles + idle_cycles + stalled_cycles);
        return total > 0 ? static_cast<double>(stalled_cycles) / total : 0.0;
    }
};

using EventSink = std::function<void(const trace::TraceEvent&)>;

namespace detail {

inline double round_decimals(double v, double scale) {
    return static_cast<double>(std::llround(v * scale)) / scale;
}

class Engine {
public:
    Engine(const NpuConfig& cfg, const std::vector<traffic::Packet>& arrivals, const EventSink& sink)
        : cfg_(cfg), sink_(sink) {
        cfg_.validate();
        for (std::size_t k = 1; k < arrivals.size(); ++k)
            if (arrivals[k].time_us < arrivals[k - 1].time_us)
                throw std::invalid_argument("arrival sequence is not sorted by time");

        build_programs();

        end_tick_ = cfg_.sim_length_cycles * kRefCycleTicks;
        window_ticks_ = cfg_.window_cycles() * kRefCycleTicks;
        next_window_ = window_ticks_;

        mes_.resize(cfg_.num_mes);
        for (int m = 0; m < cfg_.num_mes; ++m) {
            mes_[m].receive = m < cfg_.receive_mes;
            mes_[m].threads.resize(cfg_.threads_per_me);
        }

        arrival_ticks_.reserve(arrivals.size());
        for (const auto& p : arrivals) {
            std::int64_t t = std::llround(p.time_us * kTicksPerUs);
            arrival_ticks_.push_back(std::max<std::int64_t>(t, 0));
        }
        arrivals_ = &arrivals;

        tdvs_policy_.top_threshold_mbps = cfg_.policy.tdvs_top_threshold_mbps;
        tdvs_policy_.window_cycles = cfg_.policy.tdvs_window_cycles;
        tdvs_policy_.table = cfg_.vf_table;
    }

    SummaryStats run() {
        while (true) {
            std::int64_t t = next_window_;
            for (const auto& me : mes_) t = std::min(t, me.next_tick);
            if (arr_idx_ < arrival_ticks_.size()) t = std::min(t, arrival_ticks_[arr_idx_]);
            if (t >= end_tick_) break;

            if (t == next_window_) {
                window_boundary(t);
                continue;
            }
            if (arr_idx_ < arrival_ticks_.size() && arrival_ticks_[arr_idx_] == t) {
                process_arrival(t);
                continue;
            }
            for (auto& me : mes_)
                if (me.next_tick == t) me_cycle(me, t);
        }
        return finalize();
    }

private:
    struct Step {
        enum class Kind { compute, sram, sdram } kind;
        int cycles; // compute only
    };

    struct Thread {
        std::deque<traffic::Packet> queue; // receive side; transmit uses the shared queue
        traffic::Packet pkt;
        const std::vector<Step>* program = nullptr;
        std::size_t step = 0;
        int cycles_left = 0;
        bool has_packet = false;
        bool waiting = false;
        std::int64_t wake_tick = 0;
        bool done_pending = false;
        std::int64_t done_tick = 0;
        int poll_left = 0;
    };

    struct Me {
        bool receive = false;
        std::size_t level = 0;
        std::int64_t next_tick = 0;
        std::int64_t stall_until = 0;
        int rr = 0;
        std::vector<Thread> threads;
        dvs::IdleMonitor window;
        std::uint64_t tot_busy = 0, tot_idle = 0, tot_stalled = 0;
        std::uint64_t transitions = 0;
        double energy_uj = 0.0;
    };

    NpuConfig cfg_;
    EventSink sink_;
    const std::vector<traffic::Packet>* arrivals_ = nullptr;
    std::vector<std::int64_t> arrival_ticks_;
    std::size_t arr_idx_ = 0;

    std::vector<Me> mes_;
    std::vector<Step> rx_program_, tx_program_;
    std::deque<traffic::Packet> tx_queue_;
    int rx_waiting_ = 0;
    std::uint64_t in_flight_ = 0;
    int rr_dispatch_ = 0;

    std::int64_t end_tick_ = 0;
    std::int64_t window_ticks_ = 0;
    std::int64_t next_window_ = 0;

    std::int64_t mem_bus_free_ = 0;

    dvs::TrafficMonitor monitor_;
    dvs::TdvsPolicy tdvs_policy_;
    std::size_t chip_level_ = 0;

    double chip_energy_uj_ = 0.0;
    double adder_energy_uj_ = 0.0;
    std::uint64_t total_pkt_ = 0, total_bit_ = 0;
    std::uint64_t arrived_pkts_ = 0, arrived_bits_ = 0, dropped_ = 0;
    std::uint64_t chip_transitions_ = 0;

    // --- program construction -------------------------------------------

    void build_programs() {
        const auto& prof = cfg_.profile;
        const int tx_compute = prof.compute_cycles / 4;
        const int rx_compute = prof.compute_cycles - tx_compute;

        // Receive stage carries all memory accesses, interleaved between
        // evenly split compute chunks; transmit is pure pipeline work.
        std::vector<Step::Kind> accesses;
        int s = prof.sram_accesses, d = prof.sdram_accesses;
        while (s > 0 || d > 0) { // alternate, starting with SRAM
            if (s > 0) { accesses.push_back(Step::Kind::sram); --s; }
            if (d > 0) { accesses.push_back(Step::Kind::sdram); --d; }
        }
        const int chunks = static_cast<int>(accesses.size()) + 1;
        const int base = rx_compute / chunks;
        const int extra = rx_compute % chunks;
        for (int c = 0; c < chunks; ++c) {
            const int cycles = base + (c < extra ? 1 : 0);
            if (cycles > 0) rx_program_.push_back({Step::Kind::compute, cycles});
            if (c < static_cast<int>(accesses.size())) rx_program_.push_back({accesses[c], 0});
        }
        if (tx_compute > 0) tx_program_.push_back({Step::Kind::compute, tx_compute});
    }

    // --- helpers ----------------------------------------------------------

    const dvs::VfOperatingPoint& point_of(const Me& me) const { return cfg_.vf_table.at(me.level); }

    double cycle_us(std::int64_t cyc_ticks) const {
        return static_cast<double>(cyc_ticks) / kTicksPerUs;
    }

    void accrue(Me& me, const dvs::VfOperatingPoint& pt, bool busy, std::int64_t cycles, std::int64_t cyc_ticks) {
        const double e = dynamic_power_w(cfg_.power, pt, busy) * cycle_us(cyc_ticks) * static_cast<double>(cycles);
        me.energy_uj += e;
        chip_energy_uj_ += e;
    }

    void emit(const std::string& name, std::int64_t t, double idle_frac) {
        if (!sink_) return;
        trace::TraceEvent ev;
        ev.name = name;
        ev.values = {static_cast<double>(t / kRefCycleTicks),
                     round_decimals(static_cast<double>(t) / kTicksPerUs, 1e3),
                     round_decimals(chip_energy_uj_ + adder_energy_uj_, 1e6),
                     static_cast<double>(total_pkt_),
                     static_cast<double>(total_bit_),
                     round_decimals(idle_frac, 1e6),
                     static_cast<double>(dropped_)};
        sink_(ev);
    }

    std::int64_t issue_memory(std::int64_t now, Step::Kind kind) {
        const bool sram = kind == Step::Kind::sram;
        const std::int64_t bus = (sram ? cfg_.sram_bus_cycles : cfg_.sdram_bus_cycles) * kRefCycleTicks;
        const std::int64_t latency =
            (sram ? cfg_.sram_latency_cycles : cfg_.sdram_latency_cycles) * kRefCycleTicks;
        const std::int64_t start = std::max(now, mem_bus_free_);
        mem_bus_free_ = start + bus;
        return start + latency;
    }

    void enter_step(Thread& th) {
        if (th.step < th.program->size() && (*th.program)[th.step].kind == Step::Kind::compute)
            th.cycles_left = (*th.program)[th.step].cycles;
    }

    void apply_completion(Me& me, Thread& th, std::int64_t t) {
        th.done_pending = false;
        th.has_packet = false;
        th.program = nullptr;
        th.poll_left = 0; // recheck the queue next cycle
        if (me.receive) {
            tx_queue_.push_back(th.pkt);
        } else {
            ++total_pkt_;
            total_bit_ += th.pkt.size_bits;
            --in_flight_;
            if (cfg_.emit.forward) emit("forward", t, 0.0);
        }
    }

    bool try_pickup(Me& me, Thread& th, std::int64_t t) {
        if (me.receive) {
            if (th.queue.empty()) return false;
            th.pkt = th.queue.front();
            th.queue.pop_front();
            --rx_waiting_;
            th.program = &rx_program_;
        } else {
            if (tx_queue_.empty()) return false;
            th.pkt = tx_queue_.front();
            tx_queue_.pop_front();
            th.program = &tx_program_;
        }
        th.has_packet = true;
        th.step = 0;
        th.cycles_left = 0;
        enter_step(th);
        if (th.program->empty()) apply_completion(me, th, t); // degenerate zero-work profile
        return true;
    }

    // --- event handlers ---------------------------------------------------

    void process_arrival(std::int64_t t) {
        const traffic::Packet& p = (*arrivals_)[arr_idx_];
        ++arr_idx_;
        ++arrived_pkts_;
        arrived_bits_ += p.size_bits;
        if (cfg_.policy.kind == PolicyKind::tdvs) {
            monitor_.on_packet(p.size_bits);
            adder_energy_uj_ += cfg_.power.adder_energy_uj;
        }
        if (rx_waiting_ >= cfg_.queue_capacity) {
            ++dropped_;
            return;
        }
        // round-robin over the least-loaded receive threads
        const int n = cfg_.receive_mes * cfg_.threads_per_me;
        int best = -1;
        std::size_t best_load = std::numeric_limits<std::size_t>::max();
        for (int k = 0; k < n; ++k) {
            const int idx = (rr_dispatch_ + k) % n;
            const Thread& th = mes_[idx / cfg_.threads_per_me].threads[idx % cfg_.threads_per_me];
            const std::size_t load = th.queue.size() + (th.has_packet ? 1 : 0);
            if (load < best_load) {
                best_load = load;
                best = idx;
                if (load == 0) break;
            }
        }
        rr_dispatch_ = (best + 1) % n;
        Thread& th = mes_[best / cfg_.threads_per_me].threads[best % cfg_.threads_per_me];
        traffic::Packet stored = p;
        stored.time_us = static_cast<double>(t) / kTicksPerUs;
        th.queue.push_back(stored);
        ++rx_waiting_;
        ++in_flight_;
        if (cfg_.emit.fifo) emit("fifo", t, 0.0);
    }

    void apply_level(Me& me, std::size_t new_level, std::int64_t t) {
        if (new_level == me.level) return;
        me.level = new_level;
        me.stall_until = t + kScalingPenaltyTicks;
        ++me.transitions;
    }

    void window_boundary(std::int64_t t) {
        if (cfg_.emit.idle && sink_) {
            for (std::size_t m = 0; m < mes_.size(); ++m)
                emit("m" + std::to_string(m) + "_idle", t, mes_[m].window.idle_fraction());
        }
        switch (cfg_.policy.kind) {
        case PolicyKind::tdvs: {
            const double rate = dvs::window_rate_mbps(monitor_.bits, cycle_us(window_ticks_));
            const auto decision = dvs::tdvs_decide(tdvs_policy_, rate, chip_level_);
            if (decision.new_level != chip_level_) {
                chip_level_ = decision.new_level;
                ++chip_transitions_;
                for (auto& me : mes_) apply_level(me, decision.new_level, t);
            }
            monitor_.reset();
            break;
        }
        case PolicyKind::edvs: {
            dvs::EdvsPolicy policy{cfg_.policy.edvs_idle_threshold, cfg_.policy.edvs_window_cycles,
                                   cfg_.vf_table.size()};
            for (auto& me : mes_) {
                const auto decision = dvs::edvs_decide(policy, me.window.idle_fraction(), me.level);
                if (decision.new_level != me.level) {
                    ++chip_transitions_;
                    apply_level(me, decision.new_level, t);
                }
            }
            break;
        }
        case PolicyKind::none: break;
        }
        for (auto& me : mes_) me.window.reset();
        next_window_ += window_ticks_;
    }

    void me_cycle(Me& me, std::int64_t t) {
        const auto& pt = point_of(me);
        const std::int64_t cyc = cycle_ticks(pt.frequency_mhz);

        // 0. completions scheduled at the end of the previous cycle
        for (auto& th : me.threads)
            if (th.done_pending && th.done_tick <= t) apply_completion(me, th, t);

        // scaling stall: frozen pipeline, idle-level power at the new point
        if (t < me.stall_until) {
            const std::int64_t limit = std::min({me.stall_until, next_window_, end_tick_});
            const std::int64_t n = (limit - t + cyc - 1) / cyc;
            me.window.stalled_cycles += static_cast<std::uint64_t>(n);
            me.tot_stalled += static_cast<std::uint64_t>(n);
            accrue(me, pt, false, n, cyc);
            me.next_tick = t + n * cyc;
            return;
        }

        // 1. memory wake-ups (a program ending on an access completes here)
        for (auto& th : me.threads) {
            if (th.waiting && th.wake_tick <= t) {
                th.waiting = false;
                if (th.step >= th.program->size()) apply_completion(me, th, t);
                else enter_step(th);
            }
        }

        // 2. queue checks for empty threads, gated by the poll loop
        for (auto& th : me.threads) {
            if (!th.has_packet && th.poll_left == 0)
                if (!try_pickup(me, th, t)) th.poll_left = cfg_.profile.poll_cycles;
        }

        // 3. memory issues cost no pipeline slot
        for (auto& th : me.threads) {
            if (th.has_packet && !th.waiting && !th.done_pending && th.step < th.program->size() &&
                (*th.program)[th.step].kind != Step::Kind::compute) {
                th.wake_tick = issue_memory(t, (*th.program)[th.step].kind);
                th.waiting = true;
                ++th.step;
            }
        }

        // 4. pick a thread: compute work or queue polling, round-robin
        int chosen = -1;
        bool all_waiting = true;
        for (int j = 0; j < cfg_.threads_per_me; ++j) {
            const int k = (me.rr + j) % cfg_.threads_per_me;
            Thread& th = me.threads[k];
            const bool executable =
                !th.has_packet || (th.has_packet && !th.waiting && !th.done_pending && th.step < th.program->size());
            if (executable && chosen < 0) chosen = k;
        }
        for (const auto& th : me.threads)
            if (!th.waiting) all_waiting = false;

        if (chosen < 0) {
            // every thread is blocked on memory
            if (all_waiting) {
                std::int64_t wake = std::numeric_limits<std::int64_t>::max();
                for (const auto& th : me.threads) wake = std::min(wake, th.wake_tick);
                const std::int64_t limit = std::min({wake, next_window_, end_tick_});
                const std::int64_t n = std::max<std::int64_t>(1, (limit - t + cyc - 1) / cyc);
                me.window.idle_cycles += static_cast<std::uint64_t>(n);
                me.tot_idle += static_cast<std::uint64_t>(n);
                accrue(me, pt, false, n, cyc);
                me.next_tick = t + n * cyc;
                return;
            }
            me.window.idle_cycles += 1;
            me.tot_idle += 1;
            accrue(me, pt, false, 1, cyc);
            me.next_tick = t + cyc;
            return;
        }

        me.rr = (chosen + 1) % cfg_.threads_per_me;
        Thread& th = me.threads[chosen];
        me.window.busy_cycles += 1;
        me.tot_busy += 1;
        accrue(me, pt, true, 1, cyc);
        if (cfg_.emit.pipeline)
            emit("m" + std::to_string(static_cast<int>(&me - mes_.data())) + "_pipeline", t, 0.0);

        if (!th.has_packet) {
            if (th.poll_left > 0) --th.poll_left;
        } else {
            if (--th.cycles_left == 0) {
                ++th.step;
                if (th.step >= th.program->size()) {
                    th.done_pending = true;
                    th.done_tick = t + cyc;
                } else {
                    enter_step(th);
                }
            }
        }
        me.next_tick = t + cyc;
    }

    SummaryStats finalize() {
        SummaryStats s;
        s.duration_us = cfg_.duration_us();
        s.adder_energy_uj = adder_energy_uj_;
        s.energy_uj = chip_energy_uj_ + adder_energy_uj_;
        s.mean_power_w = s.energy_uj / s.duration_us;
        s.arrived_packets = arrived_pkts_;
        s.arrived_bits = arrived_bits_;
        s.forwarded_packets = total_pkt_;
        s.forwarded_bits = total_bit_;
        s.dropped_packets = dropped_;
        s.offered_mbps = static_cast<double>(arrived_bits_) / s.duration_us;
        s.throughput_mbps = static_cast<double>(total_bit_) / s.duration_us;
        s.vf_transitions = chip_transitions_;
        for (const auto& me : mes_) {
            s.me_transitions.push_back(me.transitions);
            s.me_busy_cycles.push_back(me.tot_busy);
            s.me_idle_cycles.push_back(me.tot_idle);
            s.me_stalled_cycles.push_back(me.tot_stalled);
            s.busy_cycles += me.tot_busy;
            s.idle_cycles += me.tot_idle;
            s.stalled_cycles += me.tot_stalled;
        }
        return s;
    }
};

} // namespace detail

/// Runs the simulator over a sorted arrival sequence. Events pass through
/// `sink` in trace order (subject to the emission filter); pass an empty
/// sink for a stats-only run. Deterministic: identical (config, arrivals)
/// produce identical traces and stats.
inline SummaryStats run_simulation(const NpuConfig& cfg, const std::vector<traffic::Packet>& arrivals,
                                   const EventSink& sink = {}) {
    detail::Engine engine(cfg, arrivals, sink);
    return engine.run();
}

inline void write_summary_csv_header(std::ostream& out) {
    out << "duration_us,energy_uj,adder_energy_uj,mean_power_w,arrived_packets,arrived_bits,"
           "forwarded_packets,forwarded_bits,dropped_packets,offered_mbps,throughput_mbps,"
           "vf_transitions,busy_cycles,idle_cycles,stalled_cycles\n";
}

inline void write_summary_csv_row(std::ostream& out, const SummaryStats& s) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.3f,%.6f,%.6f,%.6f,", s.duration_us, s.energy_uj, s.adder_energy_uj,
                  s.mean_power_w);
    out << buf << s.arrived_packets << ',' << s.arrived_bits << ',' << s.forwarded_packets << ','
        << s.forwarded_bits << ',' << s.dropped_packets << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,", s.offered_mbps, s.throughput_mbps);
    out << buf << s.vf_transitions << ',' << s.busy_cycles << ',' << s.idle_cycles << ',' << s.stalled_cycles
        << '\n';
}

} // namespace npex::sim
