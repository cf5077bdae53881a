#pragma once

// Formula evaluation over event instances.
//
// InstanceStream is the single evaluation core: events are fed in trace
// order and each formula instance i = 0, 1, 2, ... is emitted as soon as
// every referenced instance i+offset has been seen. Memory is bounded by a
// sliding window of max_offset+1 instances per referenced event name.
//
// End-of-trace semantics: iteration stops at the first instance whose
// missing term carries the formula's maximal offset; instances before that
// point that reference a sparser event are reported as not evaluable.

#include "npex/loc/ast.hpp"
#include "npex/trace.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <unordered_map>
#include <vector>

namespace npex::loc {

class EvalError : public FormulaError {
public:
    using FormulaError::FormulaError;
};

enum class EvalStatus {
    value,        // lhs evaluated to a real number
    undefined,    // arithmetic fault (division by zero)
    not_evaluable // a referenced instance does not exist in the trace
};

struct InstanceValue {
    std::uint64_t instance = 0;
    EvalStatus status = EvalStatus::value;
    double value = 0.0;
};

namespace detail {

// Compiled postfix program for the lhs expression.
struct Instruction {
    enum class Op { push_const, push_term, add, sub, mul, div } op;
    double constant = 0.0;
    std::uint32_t term = 0;
};

struct CompiledTerm {
    std::uint32_t buffer;  // referenced-event buffer
    std::uint32_t slot;    // captured annotation slot within the buffer
    int offset;
};

struct EventBuffer {
    std::string event;
    std::vector<std::size_t> capture_slots;     // annotation column -> slot order
    std::deque<std::vector<double>> window;     // captured values per retained instance
    std::uint64_t seen = 0;                     // total instances observed so far
    std::uint64_t base = 0;                     // instance index of window.front()
    int min_offset = std::numeric_limits<int>::max();
    int max_offset = 0;
};

inline void compile_expr(const ExprPtr& e, std::vector<Instruction>& prog,
                         std::vector<AnnotationRef>& terms) {
    switch (e->kind) {
    case Expr::Kind::constant:
        prog.push_back({Instruction::Op::push_const, e->constant, 0});
        return;
    case Expr::Kind::term: {
        terms.push_back(e->ref);
        prog.push_back({Instruction::Op::push_term, 0.0, static_cast<std::uint32_t>(terms.size() - 1)});
        return;
    }
    case Expr::Kind::binary:
        compile_expr(e->lhs, prog, terms);
        compile_expr(e->rhs, prog, terms);
        switch (e->op) {
        case BinOp::add: prog.push_back({Instruction::Op::add, 0, 0}); break;
        case BinOp::sub: prog.push_back({Instruction::Op::sub, 0, 0}); break;
        case BinOp::mul: prog.push_back({Instruction::Op::mul, 0, 0}); break;
        case BinOp::div: prog.push_back({Instruction::Op::div, 0, 0}); break;
        }
        return;
    }
}

} // namespace detail

/// Streams trace events through a formula, emitting one InstanceValue per
/// formula instance via the callback passed to feed()/finish().
class InstanceStream {
public:
    InstanceStream(const LocFormula& formula, const std::vector<std::string>& header) {
        max_offset_ = loc::max_offset(formula);

        std::vector<AnnotationRef> terms;
        detail::compile_expr(formula.lhs, program_, terms);

        std::unordered_map<std::string, std::size_t> column;
        for (std::size_t k = 0; k < header.size(); ++k) column[header[k]] = k;

        for (const auto& ref : terms) {
            auto col = column.find(ref.annotation);
            if (col == column.end())
                throw EvalError("annotation '" + ref.annotation + "' is not declared in the trace header");

            std::uint32_t buf_idx;
            auto it = buffer_of_.find(ref.event);
            if (it == buffer_of_.end()) {
                buf_idx = static_cast<std::uint32_t>(buffers_.size());
                buffer_of_.emplace(ref.event, buf_idx);
                buffers_.emplace_back();
                buffers_.back().event = ref.event;
            } else {
                buf_idx = static_cast<std::uint32_t>(it->second);
            }
            auto& buf = buffers_[buf_idx];

            std::uint32_t slot = 0;
            auto found = std::find(buf.capture_slots.begin(), buf.capture_slots.end(), col->second);
            if (found == buf.capture_slots.end()) {
                slot = static_cast<std::uint32_t>(buf.capture_slots.size());
                buf.capture_slots.push_back(col->second);
            } else {
                slot = static_cast<std::uint32_t>(found - buf.capture_slots.begin());
            }
            buf.min_offset = std::min(buf.min_offset, ref.offset);
            buf.max_offset = std::max(buf.max_offset, ref.offset);
            compiled_terms_.push_back({buf_idx, slot, ref.offset});
        }
        stack_.resize(program_.size());
    }

    std::uint64_t next_instance() const { return next_; }
    int formula_max_offset() const { return max_offset_; }

    template <typename F> void feed(const trace::TraceEvent& ev, F&& on_instance) {
        auto it = buffer_of_.find(ev.name);
        if (it == buffer_of_.end()) return;
        auto& buf = buffers_[it->second];
        auto& captured = buf.window.emplace_back();
        captured.reserve(buf.capture_slots.size());
        for (std::size_t col : buf.capture_slots) captured.push_back(ev.values[col]);
        buf.seen++;
        drain(on_instance);
    }

    /// Flushes trailing instances once the trace is exhausted.
    template <typename F> void finish(F&& on_instance) {
        while (true) {
            if (all_terms_available()) {
                on_instance(evaluate_current());
                advance();
                continue;
            }
            // Iteration stops when the gap is at the formula's deepest
            // lookahead; shallower gaps are skipped as not evaluable.
            if (missing_at_max_offset()) return;
            on_instance(InstanceValue{next_, EvalStatus::not_evaluable, 0.0});
            ++next_;
        }
    }

private:
    bool all_terms_available() const {
        for (const auto& buf : buffers_)
            if (buf.seen < next_ + static_cast<std::uint64_t>(buf.max_offset) + 1) return false;
        return true;
    }

    bool missing_at_max_offset() const {
        for (const auto& t : compiled_terms_) {
            if (t.offset != max_offset_) continue;
            const auto& buf = buffers_[t.buffer];
            if (buf.seen < next_ + static_cast<std::uint64_t>(t.offset) + 1) return true;
        }
        return false;
    }

    template <typename F> void drain(F&& on_instance) {
        while (all_terms_available()) {
            on_instance(evaluate_current());
            advance();
        }
    }

    void advance() {
        ++next_;
        for (auto& buf : buffers_) {
            std::uint64_t keep_from = next_ + static_cast<std::uint64_t>(buf.min_offset);
            while (buf.base < keep_from && !buf.window.empty()) {
                buf.window.pop_front();
                ++buf.base;
            }
        }
    }

    InstanceValue evaluate_current() {
        std::size_t sp = 0;
        bool undefined = false;
        for (const auto& ins : program_) {
            switch (ins.op) {
            case detail::Instruction::Op::push_const: stack_[sp++] = ins.constant; break;
            case detail::Instruction::Op::push_term: {
                const auto& t = compiled_terms_[ins.term];
                const auto& buf = buffers_[t.buffer];
                stack_[sp++] = buf.window[next_ + t.offset - buf.base][t.slot];
                break;
            }
            case detail::Instruction::Op::add: --sp; stack_[sp - 1] += stack_[sp]; break;
            case detail::Instruction::Op::sub: --sp; stack_[sp - 1] -= stack_[sp]; break;
            case detail::Instruction::Op::mul: --sp; stack_[sp - 1] *= stack_[sp]; break;
            case detail::Instruction::Op::div:
                --sp;
                if (stack_[sp] == 0.0) undefined = true;
                else stack_[sp - 1] /= stack_[sp];
                break;
            }
        }
        if (undefined) return {next_, EvalStatus::undefined, 0.0};
        return {next_, EvalStatus::value, stack_[0]};
    }

    std::vector<detail::Instruction> program_;
    std::vector<detail::CompiledTerm> compiled_terms_;
    std::vector<detail::EventBuffer> buffers_;
    std::unordered_map<std::string, std::size_t> buffer_of_;
    std::vector<double> stack_;
    std::uint64_t next_ = 0;
    int max_offset_ = 0;
};

/// Evaluates a single instance against a materialized trace.
inline InstanceValue evaluate_instance(const LocFormula& formula, const trace::Trace& trace,
                                       const trace::EventIndex& index, std::uint64_t i) {
    std::vector<AnnotationRef> terms;
    collect_terms(formula.lhs, terms);
    for (const auto& t : terms)
        if (index.count(t.event) < i + static_cast<std::uint64_t>(t.offset) + 1)
            return {i, EvalStatus::not_evaluable, 0.0};

    InstanceStream stream(formula, trace.header());
    InstanceValue result{i, EvalStatus::not_evaluable, 0.0};
    for (const auto& ev : trace.events()) {
        bool done = false;
        stream.feed(ev, [&](const InstanceValue& v) {
            if (v.instance == i) {
                result = v;
                done = true;
            }
        });
        if (done) break;
    }
    return result;
}

struct ViolationReport {
    struct Violation {
        std::uint64_t instance;
        double value;
    };
    std::vector<Violation> violations;
    std::uint64_t evaluated_instances = 0;   // instances with a defined value
    std::uint64_t undefined_instances = 0;
    std::uint64_t not_evaluable_instances = 0;

    bool ok() const { return violations.empty(); }
};

/// Streaming assertion checker: feed events, then take() the report.
class AssertionChecker {
public:
    AssertionChecker(const LocFormula& formula, const std::vector<std::string>& header)
        : formula_(formula), stream_(formula, header) {
        if (!formula.is_assertion()) throw EvalError("checker requires an assertion formula");
    }

    void feed(const trace::TraceEvent& ev) {
        stream_.feed(ev, [&](const InstanceValue& v) { account(v); });
    }

    ViolationReport take() {
        stream_.finish([&](const InstanceValue& v) { account(v); });
        return std::move(report_);
    }

private:
    void account(const InstanceValue& v) {
        switch (v.status) {
        case EvalStatus::value:
            ++report_.evaluated_instances;
            if (!relation_holds(v.value, formula_.relation, formula_.bound))
                report_.violations.push_back({v.instance, v.value});
            break;
        case EvalStatus::undefined: ++report_.undefined_instances; break;
        case EvalStatus::not_evaluable: ++report_.not_evaluable_instances; break;
        }
    }

    LocFormula formula_;
    InstanceStream stream_;
    ViolationReport report_;
};

inline ViolationReport check(const LocFormula& formula, const trace::Trace& trace) {
    AssertionChecker checker(formula, trace.header());
    for (const auto& ev : trace.events()) checker.feed(ev);
    return checker.take();
}

} // namespace npex::loc
