#pragma once

// Recursive-descent parser for the expression grammar: exact rationals,
// jet-coordinate variables, opaque-function jet symbols `name[args]`,
// binary + - * /, integer ^, parentheses.  Errors carry line/column and
// the expected-token set.

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "odeinv/expr.hpp"

namespace odeinv {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" +
                             std::to_string(col_)),
          line(line_),
          column(col_) {}
};

struct ParseContext {
    std::set<std::string> variables;
    std::map<std::string, std::vector<std::string>> functions;  // name -> args
};

namespace detail {

class ExprParser {
public:
    ExprParser(const std::string& text, const ParseContext& ctx)
        : text_(text), ctx_(ctx) {}

    Expr parse() {
        skip_ws();
        Expr e = parse_sum();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input", "end of input");
        return e;
    }

private:
    Expr parse_sum() {
        Expr e = parse_term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                e = e + parse_term();
            else if (accept('-'))
                e = e - parse_term();
            else
                return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_unary();
        for (;;) {
            skip_ws();
            if (accept('*'))
                e = e * parse_unary();
            else if (accept('/'))
                e = Expr::div(e, parse_unary());
            else
                return e;
        }
    }

    Expr parse_unary() {
        skip_ws();
        if (accept('-')) return -parse_unary();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            bool paren = accept('(');
            skip_ws();
            bool neg = accept('-');
            std::string digits = read_digits("integer exponent");
            if (paren) {
                skip_ws();
                expect(')');
            }
            std::int64_t n = std::stoll(digits);
            return Expr::pow(base, neg ? -n : n);
        }
        return base;
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input", "number, identifier or '('");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ++col_;
            Expr e = parse_sum();
            skip_ws();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits = read_digits("number");
            return Expr::number(Rational(BigInt(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_ident();
        fail(std::string("unexpected character '") + c + "'",
             "number, identifier or '('");
        return Expr();  // unreachable
    }

    Expr parse_ident() {
        int l = line_, co = col_;
        std::string name = read_name();
        skip_ws();
        if (accept('[')) {
            auto fn = ctx_.functions.find(name);
            if (fn == ctx_.functions.end())
                throw ParseError("'" + name + "' is not a declared function", l, co);
            std::vector<std::string> index;
            skip_ws();
            if (!accept(']')) {
                for (;;) {
                    skip_ws();
                    int al = line_, ac = col_;
                    std::string arg = read_name();
                    if (std::find(fn->second.begin(), fn->second.end(), arg) ==
                        fn->second.end())
                        throw ParseError("'" + arg + "' is not an argument of '" +
                                             name + "'",
                                         al, ac);
                    index.push_back(arg);
                    skip_ws();
                    if (accept(']')) break;
                    expect(',');
                }
            }
            return Expr::jet(name, fn->second, std::move(index));
        }
        if (ctx_.variables.count(name)) return Expr::variable(name);
        if (ctx_.functions.count(name))
            throw ParseError("function '" + name + "' needs a jet index like " +
                                 name + "[] or " + name + "[q]",
                             l, co);
        std::string known;
        for (const auto& v : ctx_.variables) known += (known.empty() ? "" : ", ") + v;
        throw ParseError("unknown identifier '" + name + "' (variables: " + known +
                             ")",
                         l, co);
    }

    std::string read_name() {
        if (pos_ >= text_.size() ||
            !(std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
            fail("expected identifier", "identifier");
        std::string out;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
            out += text_[pos_++];
            ++col_;
        }
        return out;
    }

    std::string read_digits(const char* what) {
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail(std::string("expected ") + what, what);
        std::string out;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            out += text_[pos_++];
            ++col_;
        }
        return out;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            ++col_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'", std::string(1, c));
    }

    [[noreturn]] void fail(const std::string& msg, const std::string& expected) {
        throw ParseError(msg + " (expected: " + expected + ")", line_, col_);
    }

    const std::string& text_;
    const ParseContext& ctx_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

}  // namespace detail

inline Expr parse_expr(const std::string& text, const ParseContext& ctx) {
    return detail::ExprParser(text, ctx).parse();
}

}  // namespace odeinv
