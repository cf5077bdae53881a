#pragma once

// Recursive-descent parser for the formula language.
//
//   formula := expr relop number | expr distop '{' number ',' number ',' number '}'
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := number | '-' factor | '(' expr ')' | ident '(' ident '[' 'i' ('+' uint)? ']' ')'
//
// relop: <= < >= > == !=    distop: >< (partition)  <| (cdf)  |> (ccdf)

#include "npex/loc/ast.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

namespace npex::loc {

class ParseError : public FormulaError {
public:
    ParseError(const std::string& what, std::size_t pos)
        : FormulaError("formula parse error at position " + std::to_string(pos + 1) + ": " + what), position(pos) {}
    std::size_t position;
};

namespace detail {

enum class Tok {
    number, ident,
    plus, minus, star, slash,
    lparen, rparen, lbracket, rbracket, lbrace, rbrace, comma,
    rel_le, rel_lt, rel_ge, rel_gt, rel_eq, rel_ne,
    dist_partition, dist_cdf, dist_ccdf,
    end
};

struct Token {
    Tok kind;
    std::size_t pos;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        std::size_t pos = i_;
        if (i_ >= src_.size()) return {Tok::end, pos};
        char c = src_[i_];

        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && digit_at(i_ + 1))) return lex_number(pos);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident(pos);

        ++i_;
        switch (c) {
        case '+': return {Tok::plus, pos};
        case '-': return {Tok::minus, pos};
        case '*': return {Tok::star, pos};
        case '/': return {Tok::slash, pos};
        case '(': return {Tok::lparen, pos};
        case ')': return {Tok::rparen, pos};
        case '[': return {Tok::lbracket, pos};
        case ']': return {Tok::rbracket, pos};
        case '{': return {Tok::lbrace, pos};
        case '}': return {Tok::rbrace, pos};
        case ',': return {Tok::comma, pos};
        case '<':
            if (eat('=')) return {Tok::rel_le, pos};
            if (eat('|')) return {Tok::dist_cdf, pos};
            return {Tok::rel_lt, pos};
        case '>':
            if (eat('=')) return {Tok::rel_ge, pos};
            if (eat('<')) return {Tok::dist_partition, pos};
            return {Tok::rel_gt, pos};
        case '|':
            if (eat('>')) return {Tok::dist_ccdf, pos};
            throw ParseError("'|' must be part of '|>'", pos);
        case '=':
            if (eat('=')) return {Tok::rel_eq, pos};
            throw ParseError("'=' must be written '=='", pos);
        case '!':
            if (eat('=')) return {Tok::rel_ne, pos};
            throw ParseError("'!' must be part of '!='", pos);
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
    }

private:
    bool digit_at(std::size_t k) const { return k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k])); }

    bool eat(char c) {
        if (i_ < src_.size() && src_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    Token lex_number(std::size_t pos) {
        std::size_t j = i_;
        while (j < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[j])) || src_[j] == '.')) ++j;
        if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
            std::size_t k = j + 1;
            if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
            if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
                j = k;
                while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + i_, src_.data() + j, v);
        if (ec != std::errc{} || ptr != src_.data() + j) throw ParseError("malformed number", pos);
        i_ = j;
        return {Tok::number, pos, v};
    }

    Token lex_ident(std::size_t pos) {
        std::size_t j = i_;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
            ++j;
        Token t{Tok::ident, pos};
        t.text.assign(src_.substr(i_, j - i_));
        i_ = j;
        return t;
    }

    std::string_view src_;
    std::size_t i_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    LocFormula parse() {
        LocFormula f;
        f.lhs = parse_expr();

        switch (cur_.kind) {
        case Tok::rel_le: f.relation = Relation::le; break;
        case Tok::rel_lt: f.relation = Relation::lt; break;
        case Tok::rel_ge: f.relation = Relation::ge; break;
        case Tok::rel_gt: f.relation = Relation::gt; break;
        case Tok::rel_eq: f.relation = Relation::eq; break;
        case Tok::rel_ne: f.relation = Relation::ne; break;
        case Tok::dist_partition:
        case Tok::dist_cdf:
        case Tok::dist_ccdf: {
            f.kind = LocFormula::Kind::distribution;
            f.op = cur_.kind == Tok::dist_partition ? DistOp::partition
                 : cur_.kind == Tok::dist_cdf      ? DistOp::cdf
                                                   : DistOp::ccdf;
            advance();
            f.period = parse_period();
            finish(f);
            return f;
        }
        case Tok::end: throw ParseError("expected relation or distribution operator", cur_.pos);
        default: throw ParseError("expected relation or distribution operator", cur_.pos);
        }

        advance();
        f.kind = LocFormula::Kind::assertion;
        f.bound = parse_signed_number();
        finish(f);
        return f;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind) throw ParseError(std::string("expected ") + what, cur_.pos);
        advance();
    }

    double parse_signed_number() {
        bool neg = false;
        if (cur_.kind == Tok::minus) {
            neg = true;
            advance();
        }
        if (cur_.kind != Tok::number) throw ParseError("expected number", cur_.pos);
        double v = neg ? -cur_.number : cur_.number;
        advance();
        return v;
    }

    AnalysisPeriod parse_period() {
        AnalysisPeriod p;
        std::size_t pos = cur_.pos;
        expect(Tok::lbrace, "'{'");
        p.min = parse_signed_number();
        expect(Tok::comma, "','");
        p.max = parse_signed_number();
        expect(Tok::comma, "','");
        p.step = parse_signed_number();
        expect(Tok::rbrace, "'}'");
        if (!(p.step > 0.0)) throw ParseError("analysis period step must be > 0", pos);
        if (!(p.min < p.max)) throw ParseError("analysis period requires min < max", pos);
        return p;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
            BinOp op = cur_.kind == Tok::plus ? BinOp::add : BinOp::sub;
            advance();
            lhs = Expr::make_binary(op, lhs, parse_term());
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
            BinOp op = cur_.kind == Tok::star ? BinOp::mul : BinOp::div;
            advance();
            lhs = Expr::make_binary(op, lhs, parse_factor());
        }
        return lhs;
    }

    ExprPtr parse_factor() {
        switch (cur_.kind) {
        case Tok::number: {
            double v = cur_.number;
            advance();
            return Expr::make_constant(v);
        }
        case Tok::minus: {
            advance();
            ExprPtr inner = parse_factor();
            if (inner->kind == Expr::Kind::constant) return Expr::make_constant(-inner->constant);
            return Expr::make_binary(BinOp::sub, Expr::make_constant(0.0), inner);
        }
        case Tok::lparen: {
            advance();
            ExprPtr e = parse_expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        case Tok::ident: return parse_annotation_term();
        default: throw ParseError("expected number, '(', '-' or annotation term", cur_.pos);
        }
    }

    ExprPtr parse_annotation_term() {
        AnnotationRef ref;
        ref.annotation = cur_.text;
        advance();
        expect(Tok::lparen, "'('");
        if (cur_.kind != Tok::ident) throw ParseError("expected event name", cur_.pos);
        ref.event = cur_.text;
        advance();
        expect(Tok::lbracket, "'['");
        if (cur_.kind != Tok::ident) throw ParseError("expected index variable 'i'", cur_.pos);
        if (cur_.text != "i")
            throw ParseError("only the single index variable 'i' is allowed, got '" + cur_.text + "'", cur_.pos);
        advance();
        if (cur_.kind == Tok::plus) {
            advance();
            if (cur_.kind != Tok::number) throw ParseError("expected non-negative integer offset", cur_.pos);
            double v = cur_.number;
            if (v < 0 || v != static_cast<double>(static_cast<int>(v)))
                throw ParseError("offset must be a non-negative integer", cur_.pos);
            ref.offset = static_cast<int>(v);
            advance();
        } else if (cur_.kind == Tok::minus) {
            throw ParseError("negative offsets are not allowed; use i or i+k", cur_.pos);
        }
        expect(Tok::rbracket, "']'");
        expect(Tok::rparen, "')'");
        return Expr::make_term(std::move(ref));
    }

    void finish(const LocFormula& f) {
        if (cur_.kind != Tok::end) throw ParseError("trailing input after formula", cur_.pos);
        std::vector<AnnotationRef> terms;
        collect_terms(f.lhs, terms);
        if (terms.empty()) throw ParseError("formula references no annotation term", 0);
    }

    Lexer lexer_;
    Token cur_{Tok::end, 0};
};

} // namespace detail

inline LocFormula parse_formula(std::string_view text) { return detail::Parser(text).parse(); }

} // namespace npex::loc
