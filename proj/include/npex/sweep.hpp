#pragma once

// Design-space exploration drivers: simulate + analyze per grid point,
// percentile readouts, and the policy comparison table.

#include "npex/config.hpp"
#include "npex/loc/distribution.hpp"
#include "npex/loc/parser.hpp"
#include "npex/sim.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace npex::exp {

/// Average power over spans of 100 forwarded packets, in W.
inline std::string power100_text(loc::DistOp op) {
    std::string s = "(energy(forward[i+100]) - energy(forward[i])) / "
                    "(time(forward[i+100]) - time(forward[i])) ";
    s += loc::detail::dist_token(op);
    s += " {0.5, 2.25, 0.01}";
    return s;
}

/// Average forwarding rate over spans of 100 forwarded packets. With time in
/// microseconds, bits/us is already Mbps, so no unit constant appears.
inline std::string tput100_text(loc::DistOp op) {
    std::string s = "(total_bit(forward[i+100]) - total_bit(forward[i])) / "
                    "(time(forward[i+100]) - time(forward[i])) ";
    s += loc::detail::dist_token(op);
    s += " {100, 3300, 10}";
    return s;
}

/// Expands the analyze shorthands: `power100` keeps the complementary (>=)
/// operator and `tput100` the cumulative (<=) operator of the reference
/// formulas; anything else is returned unchanged.
inline std::string expand_formula_shorthand(const std::string& text) {
    if (text == "power100") return power100_text(loc::DistOp::ccdf);
    if (text == "tput100") return tput100_text(loc::DistOp::cdf);
    return text;
}

struct RunOutput {
    sim::SummaryStats stats;
    loc::DistributionResult power_cdf;  // fraction of spans at or below each power value
    loc::DistributionResult tput_ccdf;  // fraction of spans at or above each throughput value
};

/// One simulation with the two reference analyzers attached in-stream.
inline RunOutput run_point(sim::NpuConfig cfg, const config::TrafficSpec& traffic_spec, std::uint64_t seed) {
    cfg.seed = seed;
    cfg.emit = sim::EmissionFilter{false, true, false, false}; // analyzers only need forward events

    auto arrivals = traffic::generate(traffic_spec.resolve(cfg, seed));

    loc::DistributionAnalyzer power(loc::parse_formula(power100_text(loc::DistOp::cdf)), sim::trace_header());
    loc::DistributionAnalyzer tput(loc::parse_formula(tput100_text(loc::DistOp::ccdf)), sim::trace_header());

    RunOutput out;
    out.stats = sim::run_simulation(cfg, arrivals, [&](const trace::TraceEvent& ev) {
        power.feed(ev);
        tput.feed(ev);
    });
    out.power_cdf = power.take();
    out.tput_ccdf = tput.take();
    return out;
}

struct SweepSpec {
    sim::PolicyKind kind = sim::PolicyKind::tdvs;
    std::vector<double> thresholds{800, 1000, 1200, 1400}; // Mbps (tdvs) or idle fraction (edvs)
    std::vector<std::int64_t> windows_kcycles{20, 40, 60, 80};
    std::vector<std::uint64_t> seeds{1};
    double percentile = 0.8;
    config::RunConfig base;

    void validate() const {
        if (thresholds.empty() || windows_kcycles.empty() || seeds.empty())
            throw config::ConfigError("sweep axes must be non-empty");
        if (!(percentile > 0.0 && percentile < 1.0))
            throw config::ConfigError("sweep percentile must be in (0,1)");
        if (kind == sim::PolicyKind::none) throw config::ConfigError("sweep needs a policy kind");
    }
};

struct SweepRow {
    std::string policy;        // none | tdvs | edvs
    double threshold = 0.0;    // 0 for the baseline rows
    std::int64_t window_kcycles = 0;
    std::uint64_t seed = 0;
    double p_power_w = 0.0;
    double p_tput_mbps = 0.0;
    double mean_power_w = 0.0;
    double mean_tput_mbps = 0.0;
    std::uint64_t vf_transitions = 0;
    std::uint64_t dropped_packets = 0;
};

namespace detail {

inline SweepRow make_row(const RunOutput& out, double percentile) {
    SweepRow row;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.p_power_w = loc::percentile_cut(out.power_cdf, percentile).value_or(nan);
    row.p_tput_mbps = loc::percentile_cut(out.tput_ccdf, percentile).value_or(nan);
    row.mean_power_w = out.stats.mean_power_w;
    row.mean_tput_mbps = out.stats.throughput_mbps;
    row.vf_transitions = out.stats.vf_transitions;
    row.dropped_packets = out.stats.dropped_packets;
    return row;
}

} // namespace detail

/// Runs |thresholds| x |windows| x |seeds| policy points plus one baseline
/// per seed, in deterministic grid order.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;

    for (std::uint64_t seed : spec.seeds) {
        sim::NpuConfig cfg = spec.base.npu;
        cfg.policy.kind = sim::PolicyKind::none;
        SweepRow row = detail::make_row(run_point(cfg, spec.base.traffic, seed), spec.percentile);
        row.policy = "none";
        row.seed = seed;
        rows.push_back(row);
    }

    for (double threshold : spec.thresholds) {
        for (std::int64_t window_k : spec.windows_kcycles) {
            for (std::uint64_t seed : spec.seeds) {
                sim::NpuConfig cfg = spec.base.npu;
                cfg.policy.kind = spec.kind;
                if (spec.kind == sim::PolicyKind::tdvs) {
                    cfg.policy.tdvs_top_threshold_mbps = static_cast<int>(threshold);
                    cfg.policy.tdvs_window_cycles = window_k * 1000;
                } else {
                    cfg.policy.edvs_idle_threshold = threshold;
                    cfg.policy.edvs_window_cycles = window_k * 1000;
                }
                SweepRow row = detail::make_row(run_point(cfg, spec.base.traffic, seed), spec.percentile);
                row.policy = spec.kind == sim::PolicyKind::tdvs ? "tdvs" : "edvs";
                row.threshold = threshold;
                row.window_kcycles = window_k;
                row.seed = seed;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, double percentile) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "# percentile: %.2f\n", percentile);
    out << buf;
    out << "policy,threshold,window_kcycles,seed,p_power_w,p_tput_mbps,mean_power_w,mean_tput_mbps,"
           "vf_transitions,dropped_packets\n";
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%g,%lld,%llu,%.6f,%.6f,%.6f,%.6f,%llu,%llu\n", r.policy.c_str(),
                      r.threshold, static_cast<long long>(r.window_kcycles),
                      static_cast<unsigned long long>(r.seed), r.p_power_w, r.p_tput_mbps, r.mean_power_w,
                      r.mean_tput_mbps, static_cast<unsigned long long>(r.vf_transitions),
                      static_cast<unsigned long long>(r.dropped_packets));
        out << buf;
    }
}

/// Seed-averaged gnuplot surface (splot) layout: one block per threshold,
/// rows `threshold window value`, blank line between blocks.
inline void write_gnuplot_surface(std::ostream& out, const std::vector<SweepRow>& rows,
                                  double SweepRow::*field, const std::string& title) {
    out << "# " << title << "\n# threshold window_kcycles value\n";
    std::map<double, std::map<std::int64_t, std::pair<double, int>>> grid;
    for (const auto& r : rows) {
        if (r.policy == "none") continue;
        auto& cell = grid[r.threshold][r.window_kcycles];
        cell.first += r.*field;
        cell.second += 1;
    }
    char buf[128];
    for (const auto& [threshold, by_window] : grid) {
        for (const auto& [window, cell] : by_window) {
            std::snprintf(buf, sizeof buf, "%g %lld %.6f\n", threshold, static_cast<long long>(window),
                          cell.first / cell.second);
            out << buf;
        }
        out << '\n';
    }
}

struct CompareSpec {
    std::vector<std::string> benchmarks{"ipfwdr", "url", "nat", "md4"};
    std::vector<std::string> levels{"high", "medium", "low"};
    int tdvs_threshold_mbps = 1400; // the power-priority pick
    std::int64_t tdvs_window_kcycles = 40;
    double edvs_idle_threshold = 0.10;
    std::int64_t edvs_window_kcycles = 40;
    std::vector<std::uint64_t> seeds{1};
    config::RunConfig base;
};

struct CompareRow {
    std::string benchmark;
    std::string level;
    std::string policy;
    double mean_power_w = 0.0;
    double energy_uj = 0.0;
    double throughput_mbps = 0.0;
    double power_saving_pct = 0.0; // vs the no-DVS baseline of the same cell
    double tput_loss_pct = 0.0;
};

inline std::vector<CompareRow> run_compare(const CompareSpec& spec) {
    std::vector<CompareRow> rows;
    for (const auto& bench : spec.benchmarks) {
        for (const auto& level : spec.levels) {
            config::TrafficSpec traffic = spec.base.traffic;
            traffic.profile = level;

            auto averaged = [&](sim::NpuConfig cfg) {
                sim::SummaryStats acc;
                double power = 0, energy = 0, tput = 0;
                for (std::uint64_t seed : spec.seeds) {
                    auto out = run_point(cfg, traffic, seed);
                    power += out.stats.mean_power_w;
                    energy += out.stats.energy_uj;
                    tput += out.stats.throughput_mbps;
                }
                const double n = static_cast<double>(spec.seeds.size());
                acc.mean_power_w = power / n;
                acc.energy_uj = energy / n;
                acc.throughput_mbps = tput / n;
                return acc;
            };

            sim::NpuConfig base_cfg = spec.base.npu;
            base_cfg.profile = sim::WorkloadProfile::builtin(bench);

            sim::NpuConfig none_cfg = base_cfg;
            none_cfg.policy.kind = sim::PolicyKind::none;

            sim::NpuConfig tdvs_cfg = base_cfg;
            tdvs_cfg.policy.kind = sim::PolicyKind::tdvs;
            tdvs_cfg.policy.tdvs_top_threshold_mbps = spec.tdvs_threshold_mbps;
            tdvs_cfg.policy.tdvs_window_cycles = spec.tdvs_window_kcycles * 1000;

            sim::NpuConfig edvs_cfg = base_cfg;
            edvs_cfg.policy.kind = sim::PolicyKind::edvs;
            edvs_cfg.policy.edvs_idle_threshold = spec.edvs_idle_threshold;
            edvs_cfg.policy.edvs_window_cycles = spec.edvs_window_kcycles * 1000;

            const auto baseline = averaged(none_cfg);
            const struct {
                const char* name;
                sim::SummaryStats stats;
            } cells[] = {{"none", baseline}, {"tdvs", averaged(tdvs_cfg)}, {"edvs", averaged(edvs_cfg)}};

            for (const auto& cell : cells) {
                CompareRow row;
                row.benchmark = bench;
                row.level = level;
                row.policy = cell.name;
                row.mean_power_w = cell.stats.mean_power_w;
                row.energy_uj = cell.stats.energy_uj;
                row.throughput_mbps = cell.stats.throughput_mbps;
                row.power_saving_pct = 100.0 * (1.0 - cell.stats.mean_power_w / baseline.mean_power_w);
                row.tput_loss_pct =
                    baseline.throughput_mbps > 0
                        ? 100.0 * (1.0 - cell.stats.throughput_mbps / baseline.throughput_mbps)
                        : 0.0;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

inline void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
    out << "benchmark,level,policy,mean_power_w,energy_uj,throughput_mbps,power_saving_pct,tput_loss_pct\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%s,%s,%.6f,%.6f,%.6f,%.3f,%.3f\n", r.benchmark.c_str(),
                      r.level.c_str(), r.policy.c_str(), r.mean_power_w, r.energy_uj, r.throughput_mbps,
                      r.power_saving_pct, r.tput_loss_pct);
        out << buf;
    }
}

} // namespace npex::exp
