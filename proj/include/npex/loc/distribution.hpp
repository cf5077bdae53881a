#pragma once

// Distribution analyzers for the three operators.
//
// Given an analysis period {min, max, step}:
//   partition — bins (-inf,min], (min,min+step], ..., (max-step',max], (max,+inf);
//               the last interior edge clamps to max when the range is not
//               an integer multiple of step.
//   cdf       — per grid point x in {min, min+step, ..., max}: count of values <= x.
//   ccdf      — per grid point x: count of values >= x.
//
// Bin-edge comparisons are exact (<=, <) on the computed edges; undefined
// instances (division by zero) are counted but never binned.

#include "npex/loc/eval.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace npex::loc {

/// Grid points min, min+step, ..., max; the last partial step clamps to max.
inline std::vector<double> period_grid(const AnalysisPeriod& p) {
    p.validate();
    std::vector<double> grid;
    grid.push_back(p.min);
    const double tol = 1e-9 * p.step; // absorbs fp noise in min + k*step near max
    for (long k = 1;; ++k) {
        double x = p.min + static_cast<double>(k) * p.step;
        if (x >= p.max - tol) {
            grid.push_back(p.max);
            break;
        }
        grid.push_back(x);
    }
    return grid;
}

inline std::size_t bin_count(const AnalysisPeriod& p, DistOp op) {
    std::size_t grid = period_grid(p).size();
    return op == DistOp::partition ? grid + 1 : grid;
}

struct DistributionResult {
    struct Bin {
        double lower;  // partition: open lower edge; ccdf: grid point; cdf: -inf
        double upper;  // partition: closed upper edge; cdf: grid point; ccdf: +inf
        std::uint64_t count = 0;
        double fraction = 0.0;

        /// The finite edge that identifies this bin in tabular output.
        double boundary() const { return std::isfinite(upper) ? upper : lower; }
    };

    DistOp op = DistOp::partition;
    AnalysisPeriod period;
    std::uint64_t total_instances = 0;       // defined + undefined
    std::uint64_t undefined_instances = 0;
    std::uint64_t not_evaluable_instances = 0;
    std::vector<Bin> bins;

    std::uint64_t defined_instances() const { return total_instances - undefined_instances; }
};

/// Streaming distribution analyzer with O(bins) state.
class DistributionAnalyzer {
public:
    DistributionAnalyzer(const LocFormula& formula, const std::vector<std::string>& header)
        : formula_(formula), stream_(formula, header), grid_(period_grid(formula.period)) {
        if (!formula.is_distribution()) throw EvalError("analyzer requires a distribution formula");
        // buckets partition the line: (-inf,g0], (g0,g1], ..., (g_last,+inf)
        buckets_.assign(grid_.size() + 1, 0);
        equal_to_edge_.assign(grid_.size(), 0);
    }

    void feed(const trace::TraceEvent& ev) {
        stream_.feed(ev, [&](const InstanceValue& v) { account(v); });
    }

    DistributionResult take() {
        stream_.finish([&](const InstanceValue& v) { account(v); });

        DistributionResult r;
        r.op = formula_.op;
        r.period = formula_.period;
        r.total_instances = defined_ + undefined_;
        r.undefined_instances = undefined_;
        r.not_evaluable_instances = not_evaluable_;

        const double inf = std::numeric_limits<double>::infinity();
        switch (formula_.op) {
        case DistOp::partition: {
            r.bins.push_back({-inf, grid_.front(), buckets_.front(), 0.0});
            for (std::size_t j = 1; j < grid_.size(); ++j)
                r.bins.push_back({grid_[j - 1], grid_[j], buckets_[j], 0.0});
            r.bins.push_back({grid_.back(), inf, buckets_.back(), 0.0});
            break;
        }
        case DistOp::cdf: {
            std::uint64_t running = 0;
            for (std::size_t j = 0; j < grid_.size(); ++j) {
                running += buckets_[j];
                r.bins.push_back({-inf, grid_[j], running, 0.0});
            }
            break;
        }
        case DistOp::ccdf: {
            // count(>= g_j) = values strictly above g_j plus values equal to it
            std::vector<std::uint64_t> counts(grid_.size(), 0);
            std::uint64_t above = 0;
            for (std::size_t j = grid_.size(); j-- > 0;) {
                above += buckets_[j + 1]; // bucket j+1 holds (g_j, g_{j+1}] (or the overflow)
                counts[j] = above + equal_to_edge_[j];
            }
            for (std::size_t j = 0; j < grid_.size(); ++j)
                r.bins.push_back({grid_[j], inf, counts[j], 0.0});
            break;
        }
        }

        const std::uint64_t denom = r.defined_instances();
        for (auto& b : r.bins) b.fraction = denom ? static_cast<double>(b.count) / static_cast<double>(denom) : 0.0;
        return r;
    }

private:
    void account(const InstanceValue& v) {
        switch (v.status) {
        case EvalStatus::undefined: ++undefined_; return;
        case EvalStatus::not_evaluable: ++not_evaluable_; return;
        case EvalStatus::value: break;
        }
        ++defined_;
        const double x = v.value;
        // bucket j holds values in (g_{j-1}, g_j]; bucket 0 is (-inf, g_0];
        // the overflow bucket holds values > g_last.
        auto it = std::lower_bound(grid_.begin(), grid_.end(), x); // first g >= x
        std::size_t j = static_cast<std::size_t>(it - grid_.begin());
        ++buckets_[j];
        if (it != grid_.end() && *it == x) ++equal_to_edge_[j];
    }

    LocFormula formula_;
    InstanceStream stream_;
    std::vector<double> grid_;
    std::vector<std::uint64_t> buckets_;
    std::vector<std::uint64_t> equal_to_edge_;
    std::uint64_t defined_ = 0;
    std::uint64_t undefined_ = 0;
    std::uint64_t not_evaluable_ = 0;
};

inline DistributionResult analyze_distribution(const LocFormula& formula, const trace::Trace& trace) {
    DistributionAnalyzer analyzer(formula, trace.header());
    for (const auto& ev : trace.events()) analyzer.feed(ev);
    return analyzer.take();
}

/// Percentile readout on a cdf/ccdf result: for cdf the smallest grid value
/// whose fraction reaches p, for ccdf the largest. Absent when no grid point
/// qualifies.
inline std::optional<double> percentile_cut(const DistributionResult& r, double p) {
    if (!(p > 0.0 && p < 1.0)) throw EvalError("percentile must be in (0, 1)");
    if (r.op == DistOp::cdf) {
        for (const auto& b : r.bins)
            if (b.fraction >= p) return b.upper;
        return std::nullopt;
    }
    if (r.op == DistOp::ccdf) {
        std::optional<double> best;
        for (const auto& b : r.bins)
            if (b.fraction >= p) best = b.lower;
        return best;
    }
    throw EvalError("percentile_cut requires a cdf or ccdf result");
}

namespace detail {

inline std::string bin_range_label(const DistributionResult& r, const DistributionResult::Bin& b) {
    auto num = [](double x) {
        if (x == -std::numeric_limits<double>::infinity()) return std::string("-inf");
        if (x == std::numeric_limits<double>::infinity()) return std::string("+inf");
        return number_to_string(x);
    };
    switch (r.op) {
    case DistOp::partition: return "(" + num(b.lower) + "," + num(b.upper) + "]";
    case DistOp::cdf: return "<=" + num(b.upper);
    case DistOp::ccdf: return ">=" + num(b.lower);
    }
    return {};
}

} // namespace detail

/// CSV emission: metadata comment lines, then bin_boundary,count,fraction.
inline void write_distribution_csv(std::ostream& out, const DistributionResult& r,
                                   const std::string& formula_text) {
    out << "# formula: " << formula_text << '\n';
    out << "# total: " << r.total_instances << '\n';
    out << "# undefined: " << r.undefined_instances << '\n';
    out << "# not_evaluable: " << r.not_evaluable_instances << '\n';
    out << "bin_boundary,count,fraction\n";
    char frac[32];
    for (const auto& b : r.bins) {
        std::snprintf(frac, sizeof frac, "%.6f", b.fraction);
        out << detail::number_to_string(b.boundary()) << ',' << b.count << ',' << frac << '\n';
    }
}

} // namespace npex::loc
