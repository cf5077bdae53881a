#pragma once

// Formula AST for the trace-constraint language.
//
// A formula is an arithmetic expression over annotation terms of the form
// annotation(event[i]) / annotation(event[i+k]), closed either by a relation
// against a constant (assertion) or by a distribution operator with an
// analysis period (distribution).

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace npex::loc {

class FormulaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BinOp { add, sub, mul, div };

enum class Relation { le, lt, ge, gt, eq, ne };

/// Distribution operators, named by what a bin counts:
///   partition — value falls in (edge_{k-1}, edge_k]   (the paper's join)
///   cdf       — value <= grid point
///   ccdf      — value >= grid point
enum class DistOp { partition, cdf, ccdf };

struct AnalysisPeriod {
    double min = 0.0;
    double max = 0.0;
    double step = 0.0;

    void validate() const {
        if (!(step > 0.0)) throw FormulaError("analysis period step must be > 0");
        if (!(min < max)) throw FormulaError("analysis period requires min < max");
    }
};

/// annotation(event[i+offset]) with offset >= 0.
struct AnnotationRef {
    std::string annotation;
    std::string event;
    int offset = 0;

    bool operator==(const AnnotationRef& o) const {
        return annotation == o.annotation && event == o.event && offset == o.offset;
    }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { constant, term, binary } kind;

    double constant = 0.0; // Kind::constant
    AnnotationRef ref;     // Kind::term
    BinOp op = BinOp::add; // Kind::binary
    ExprPtr lhs, rhs;

    static ExprPtr make_constant(double v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::constant;
        e->constant = v;
        return e;
    }
    static ExprPtr make_term(AnnotationRef r) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::term;
        e->ref = std::move(r);
        return e;
    }
    static ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
        // Fold constant subtrees; division by a constant zero is kept so it
        // surfaces as an undefined value at evaluation time.
        if (lhs->kind == Kind::constant && rhs->kind == Kind::constant &&
            !(op == BinOp::div && rhs->constant == 0.0)) {
            switch (op) {
            case BinOp::add: return make_constant(lhs->constant + rhs->constant);
            case BinOp::sub: return make_constant(lhs->constant - rhs->constant);
            case BinOp::mul: return make_constant(lhs->constant * rhs->constant);
            case BinOp::div: return make_constant(lhs->constant / rhs->constant);
            }
        }
        auto e = std::make_shared<Expr>();
        e->kind = Kind::binary;
        e->op = op;
        e->lhs = std::move(lhs);
        e->rhs = std::move(rhs);
        return e;
    }
};

inline bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Expr::Kind::constant: return a->constant == b->constant;
    case Expr::Kind::term: return a->ref == b->ref;
    case Expr::Kind::binary: return a->op == b->op && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
    return false;
}

struct LocFormula {
    enum class Kind { assertion, distribution } kind = Kind::assertion;

    ExprPtr lhs;
    Relation relation = Relation::le; // assertion
    double bound = 0.0;               // assertion
    DistOp op = DistOp::partition;    // distribution
    AnalysisPeriod period;            // distribution

    bool is_assertion() const { return kind == Kind::assertion; }
    bool is_distribution() const { return kind == Kind::distribution; }
    std::string to_string() const;
};

inline bool equal(const LocFormula& a, const LocFormula& b) {
    if (a.kind != b.kind || !equal(a.lhs, b.lhs)) return false;
    if (a.kind == LocFormula::Kind::assertion) return a.relation == b.relation && a.bound == b.bound;
    return a.op == b.op && a.period.min == b.period.min && a.period.max == b.period.max &&
           a.period.step == b.period.step;
}

inline bool relation_holds(double value, Relation rel, double bound) {
    switch (rel) {
    case Relation::le: return value <= bound;
    case Relation::lt: return value < bound;
    case Relation::ge: return value >= bound;
    case Relation::gt: return value > bound;
    case Relation::eq: return value == bound;
    case Relation::ne: return value != bound;
    }
    return false;
}

/// Largest instance offset referenced anywhere in the formula. Evaluating
/// instance i touches only instances i..i+max_offset of each event name.
inline int max_offset(const ExprPtr& e) {
    switch (e->kind) {
    case Expr::Kind::constant: return 0;
    case Expr::Kind::term: return e->ref.offset;
    case Expr::Kind::binary: return std::max(max_offset(e->lhs), max_offset(e->rhs));
    }
    return 0;
}

inline int max_offset(const LocFormula& f) { return max_offset(f.lhs); }

inline void collect_terms(const ExprPtr& e, std::vector<AnnotationRef>& out) {
    switch (e->kind) {
    case Expr::Kind::constant: return;
    case Expr::Kind::term: out.push_back(e->ref); return;
    case Expr::Kind::binary:
        collect_terms(e->lhs, out);
        collect_terms(e->rhs, out);
        return;
    }
}

namespace detail {

/// Shortest decimal form that parses back to exactly the same double.
inline std::string number_to_string(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

inline const char* op_token(BinOp op) {
    switch (op) {
    case BinOp::add: return "+";
    case BinOp::sub: return "-";
    case BinOp::mul: return "*";
    case BinOp::div: return "/";
    }
    return "?";
}

inline const char* relation_token(Relation r) {
    switch (r) {
    case Relation::le: return "<=";
    case Relation::lt: return "<";
    case Relation::ge: return ">=";
    case Relation::gt: return ">";
    case Relation::eq: return "==";
    case Relation::ne: return "!=";
    }
    return "?";
}

inline const char* dist_token(DistOp op) {
    switch (op) {
    case DistOp::partition: return "><";
    case DistOp::cdf: return "<|";
    case DistOp::ccdf: return "|>";
    }
    return "?";
}

inline int precedence(BinOp op) { return (op == BinOp::add || op == BinOp::sub) ? 1 : 2; }

inline void print_expr(const ExprPtr& e, std::string& out, int parent_prec, bool is_rhs) {
    switch (e->kind) {
    case Expr::Kind::constant:
        if (e->constant < 0) {
            out += '(';
            out += number_to_string(e->constant);
            out += ')';
        } else {
            out += number_to_string(e->constant);
        }
        return;
    case Expr::Kind::term:
        out += e->ref.annotation;
        out += '(';
        out += e->ref.event;
        out += "[i";
        if (e->ref.offset > 0) {
            out += '+';
            out += std::to_string(e->ref.offset);
        }
        out += "])";
        return;
    case Expr::Kind::binary: {
        int prec = precedence(e->op);
        // Right operands of -, / need parens at equal precedence.
        bool parens = prec < parent_prec || (prec == parent_prec && is_rhs);
        if (parens) out += '(';
        print_expr(e->lhs, out, prec, false);
        out += ' ';
        out += op_token(e->op);
        out += ' ';
        print_expr(e->rhs, out, prec, true);
        if (parens) out += ')';
        return;
    }
    }
}

} // namespace detail

inline std::string LocFormula::to_string() const {
    std::string out;
    detail::print_expr(lhs, out, 0, false);
    if (kind == Kind::assertion) {
        out += ' ';
        out += detail::relation_token(relation);
        out += ' ';
        out += detail::number_to_string(bound);
    } else {
        out += ' ';
        out += detail::dist_token(op);
        out += " {";
        out += detail::number_to_string(period.min);
        out += ", ";
        out += detail::number_to_string(period.max);
        out += ", ";
        out += detail::number_to_string(period.step);
        out += '}';
    }
    return out;
}

} // namespace npex::loc
