#pragma once

// Trace data model and on-disk format.
//
// A trace file is plain text: a header directive naming the annotation
// columns, then one event per line (annotation values in header order,
// event name last). Comment lines start with '#'.
//
//   # annotations: cycle time energy total_pkt
//   365 1.573 0.768133 120 m2_pipeline

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace npex::trace {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto tail = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    if (!head(s[0])) return false;
    return std::all_of(s.begin() + 1, s.end(), tail);
}

/// Annotation keys whose values must be non-decreasing over the whole trace.
inline const std::vector<std::string>& cumulative_keys() {
    static const std::vector<std::string> keys = {"cycle", "time", "energy", "total_pkt", "total_bit"};
    return keys;
}

/// One timestamped simulation event. Values are bound positionally to the
/// trace header keys.
struct TraceEvent {
    std::string name;
    std::vector<double> values;
};

struct MonotonicityWarning {
    std::size_t line;     // 1-based line number in the source file
    std::string key;
    double previous;
    double value;
};

namespace detail {

inline double parse_number(std::string_view tok, std::size_t line_no) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("line " + std::to_string(line_no) + ": malformed number '" + std::string(tok) + "'");
    return v;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

} // namespace detail

/// Parses one event line: header-many numeric columns, then the event name.
inline TraceEvent parse_trace_line(std::string_view line, const std::vector<std::string>& header,
                                   std::size_t line_no = 0) {
    auto toks = detail::split_ws(line);
    if (toks.size() != header.size() + 1)
        throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                         " annotation columns plus event name, got " + std::to_string(toks.size()) + " fields");
    TraceEvent ev;
    ev.values.reserve(header.size());
    for (std::size_t k = 0; k < header.size(); ++k)
        ev.values.push_back(detail::parse_number(toks[k], line_no));
    ev.name = std::string(toks.back());
    if (!is_identifier(ev.name))
        throw ParseError("line " + std::to_string(line_no) + ": bad event name '" + ev.name + "'");
    return ev;
}

/// A fully materialized trace: ordered header keys plus the global event
/// sequence. Immutable once built; safe for concurrent readers.
class Trace {
public:
    Trace() = default;
    explicit Trace(std::vector<std::string> header) : header_(std::move(header)) { index_header(); }

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<TraceEvent>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }

    std::optional<std::size_t> annotation_index(std::string_view key) const {
        auto it = key_index_.find(std::string(key));
        if (it == key_index_.end()) return std::nullopt;
        return it->second;
    }

    void append(TraceEvent ev) {
        if (ev.values.size() != header_.size()) throw ParseError("event does not match trace header");
        events_.push_back(std::move(ev));
    }

private:
    void index_header() {
        for (std::size_t k = 0; k < header_.size(); ++k) key_index_[header_[k]] = k;
    }

    std::vector<std::string> header_;
    std::vector<TraceEvent> events_;
    std::unordered_map<std::string, std::size_t> key_index_;
};

/// Per-name instance positions. Instance i of name E is the (i+1)-th
/// occurrence of E in the global event order.
class EventIndex {
public:
    EventIndex() = default;

    static EventIndex build(const Trace& trace) {
        EventIndex idx;
        for (std::size_t pos = 0; pos < trace.events().size(); ++pos)
            idx.positions_[trace.events()[pos].name].push_back(pos);
        return idx;
    }

    /// Position of instance i of `name`, or absent if fewer than i+1 exist.
    std::optional<std::size_t> instance_at(std::string_view name, std::size_t i) const {
        auto it = positions_.find(std::string(name));
        if (it == positions_.end() || i >= it->second.size()) return std::nullopt;
        return it->second[i];
    }

    std::size_t count(std::string_view name) const {
        auto it = positions_.find(std::string(name));
        return it == positions_.end() ? 0 : it->second.size();
    }

    const std::unordered_map<std::string, std::vector<std::size_t>>& positions() const { return positions_; }

private:
    std::unordered_map<std::string, std::vector<std::size_t>> positions_;
};

/// Streaming trace reader. Reads the header directive, then yields events
/// one line at a time; cumulative annotations are checked for monotonicity
/// and violations collected as warnings.
class TraceReader {
public:
    explicit TraceReader(std::istream& in) : in_(in) {
        read_header();
        monotone_slots_.assign(header_.size(), false);
        last_values_.assign(header_.size(), 0.0);
        for (std::size_t k = 0; k < header_.size(); ++k)
            for (const auto& key : cumulative_keys())
                if (header_[k] == key) monotone_slots_[k] = true;
    }

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<MonotonicityWarning>& warnings() const { return warnings_; }
    std::size_t line_number() const { return line_no_; }

    std::optional<TraceEvent> next() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            std::string_view sv = trimmed(line);
            if (sv.empty() || sv.front() == '#') continue;
            TraceEvent ev = parse_trace_line(sv, header_, line_no_);
            check_monotone(ev);
            return ev;
        }
        return std::nullopt;
    }

private:
    static std::string_view trimmed(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        return s;
    }

    void read_header() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            std::string_view sv = trimmed(line);
            if (sv.empty()) continue;
            if (sv.front() == '#') {
                std::string_view body = trimmed(sv.substr(1));
                constexpr std::string_view directive = "annotations:";
                if (body.substr(0, directive.size()) == directive) {
                    for (auto tok : detail::split_ws(body.substr(directive.size()))) {
                        if (!is_identifier(tok))
                            throw ParseError("line " + std::to_string(line_no_) + ": bad annotation key '" +
                                             std::string(tok) + "'");
                        header_.emplace_back(tok);
                    }
                    return;
                }
                continue; // ordinary comment before the directive
            }
            throw ParseError("line " + std::to_string(line_no_) + ": event line before '# annotations:' directive");
        }
        throw ParseError("missing '# annotations:' header directive");
    }

    void check_monotone(const TraceEvent& ev) {
        for (std::size_t k = 0; k < header_.size(); ++k) {
            if (!monotone_slots_[k]) continue;
            if (seen_any_ && ev.values[k] < last_values_[k])
                warnings_.push_back({line_no_, header_[k], last_values_[k], ev.values[k]});
            last_values_[k] = ev.values[k];
        }
        seen_any_ = true;
    }

    std::istream& in_;
    std::vector<std::string> header_;
    std::vector<bool> monotone_slots_;
    std::vector<double> last_values_;
    std::vector<MonotonicityWarning> warnings_;
    bool seen_any_ = false;
    std::size_t line_no_ = 0;
};

/// Reads and materializes a whole trace; warnings (if any) are appended to
/// *warnings when given.
inline Trace read_trace(std::istream& in, std::vector<MonotonicityWarning>* warnings = nullptr) {
    TraceReader reader(in);
    Trace trace(reader.header());
    while (auto ev = reader.next()) trace.append(std::move(*ev));
    if (warnings)
        warnings->insert(warnings->end(), reader.warnings().begin(), reader.warnings().end());
    return trace;
}

namespace detail {

// Printed precision per annotation key. Counters print as integers, time in
// microseconds with 3 digits, energy in microjoules with 6, everything else
// with 6.
inline int fraction_digits(std::string_view key) {
    if (key == "cycle" || key == "total_pkt" || key == "total_bit" || key == "p_loss") return 0;
    if (key == "time") return 3;
    return 6;
}

inline void append_formatted(std::string& out, double v, int digits) {
    char buf[64];
    int n = std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    out.append(buf, static_cast<std::size_t>(n));
}

} // namespace detail

/// Writes events in the trace file format, one per call, with the per-key
/// decimal precision fixed by the format.
class TraceWriter {
public:
    TraceWriter(std::ostream& out, std::vector<std::string> header) : out_(out), header_(std::move(header)) {
        digits_.reserve(header_.size());
        for (const auto& key : header_) digits_.push_back(detail::fraction_digits(key));
        out_ << "# annotations:";
        for (const auto& key : header_) out_ << ' ' << key;
        out_ << '\n';
    }

    void write(const TraceEvent& ev) {
        if (ev.values.size() != header_.size()) throw ParseError("event does not match writer header");
        line_.clear();
        for (std::size_t k = 0; k < ev.values.size(); ++k) {
            detail::append_formatted(line_, ev.values[k], digits_[k]);
            line_.push_back(' ');
        }
        line_ += ev.name;
        line_.push_back('\n');
        out_ << line_;
    }

    void write(const Trace& trace) {
        for (const auto& ev : trace.events()) write(ev);
    }

private:
    std::ostream& out_;
    std::vector<std::string> header_;
    std::vector<int> digits_;
    std::string line_;
};

} // namespace npex::trace
