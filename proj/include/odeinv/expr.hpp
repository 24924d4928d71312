#pragma once

// Immutable expression DAG over exact rationals, jet-coordinate variables
// and formal jet symbols of declared opaque functions.  Constructors
// canonicalize: sums and products are flattened and sorted, constants
// folded, like terms and like factors collected.  Quotients are products
// with negative exponents; a pole surfaces only at evaluation time.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "odeinv/rational.hpp"

namespace odeinv {

struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& msg) : std::runtime_error(msg) {}
};
struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};
struct DivisionByZeroError : std::runtime_error {
    explicit DivisionByZeroError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ExprNode;

class Expr {
public:
    Expr() = default;

    static Expr number(Rational v);
    static Expr number(std::int64_t num, std::int64_t den = 1) {
        return number(make_rational(num, den));
    }
    static Expr variable(const std::string& name);
    // jet symbol: `func` with declared argument list `args` and multi-index
    // `index` (any order; stored sorted so mixed partials are identified)
    static Expr jet(const std::string& func, std::vector<std::string> args,
                    std::vector<std::string> index);

    static Expr add(const std::vector<Expr>& xs);
    static Expr mul(const std::vector<Expr>& xs);
    static Expr pow(const Expr& base, std::int64_t n);
    static Expr div(const Expr& a, const Expr& b);

    bool is_number() const;
    bool is_zero_literal() const;
    const Rational& number_value() const;

    const ExprNode& node() const { return *p_; }
    const ExprNode* raw() const { return p_.get(); }
    explicit operator bool() const { return static_cast<bool>(p_); }

private:
    explicit Expr(std::shared_ptr<const ExprNode> p) : p_(std::move(p)) {}
    static Expr intern(ExprNode&& n);
    std::shared_ptr<const ExprNode> p_;

    friend struct ExprNode;
    friend int cmp(const Expr&, const Expr&);
};

struct NumberData {
    Rational value;
};
struct VarData {
    std::string name;
};
struct JetData {
    std::string func;
    std::vector<std::string> args;   // declared argument names, as declared
    std::vector<std::string> index;  // sorted multi-index (subset of args)
};
struct SumData {
    Rational constant;
    std::vector<std::pair<Rational, Expr>> terms;  // coeff != 0, sorted
};
struct ProdData {
    std::vector<std::pair<Expr, std::int64_t>> factors;  // exp != 0, sorted
};

struct ExprNode {
    std::variant<NumberData, VarData, JetData, SumData, ProdData> data;
    std::size_t hash = 0;
};

namespace detail {

inline std::size_t hash_combine(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
// FNV-1a: the ordering of canonical sums/products keys off these hashes,
// so they must not vary between standard libraries
inline std::size_t hash_str(const std::string& s) {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}
inline std::size_t hash_rat(const Rational& v) {
    return hash_str(v.str());
}

inline std::size_t node_hash(const ExprNode& n);

}  // namespace detail

inline bool Expr::is_number() const {
    return p_ && std::holds_alternative<NumberData>(p_->data);
}
inline bool Expr::is_zero_literal() const {
    return is_number() && std::get<NumberData>(p_->data).value == 0;
}
inline const Rational& Expr::number_value() const {
    return std::get<NumberData>(p_->data).value;
}

// deterministic structural three-way comparison (pointer-free ordering)
inline int cmp(const Expr& a, const Expr& b) {
    if (a.raw() == b.raw()) return 0;
    const ExprNode& na = a.node();
    const ExprNode& nb = b.node();
    if (na.hash != nb.hash) return na.hash < nb.hash ? -1 : 1;
    if (na.data.index() != nb.data.index())
        return na.data.index() < nb.data.index() ? -1 : 1;
    switch (na.data.index()) {
        case 0: {
            const auto& x = std::get<NumberData>(na.data).value;
            const auto& y = std::get<NumberData>(nb.data).value;
            if (x == y) return 0;
            return x < y ? -1 : 1;
        }
        case 1: {
            const auto& x = std::get<VarData>(na.data).name;
            const auto& y = std::get<VarData>(nb.data).name;
            return x.compare(y) < 0 ? -1 : (x == y ? 0 : 1);
        }
        case 2: {
            const auto& x = std::get<JetData>(na.data);
            const auto& y = std::get<JetData>(nb.data);
            if (x.func != y.func) return x.func < y.func ? -1 : 1;
            if (x.index != y.index) return x.index < y.index ? -1 : 1;
            return 0;
        }
        case 3: {
            const auto& x = std::get<SumData>(na.data);
            const auto& y = std::get<SumData>(nb.data);
            if (x.terms.size() != y.terms.size())
                return x.terms.size() < y.terms.size() ? -1 : 1;
            if (x.constant != y.constant)
                return x.constant < y.constant ? -1 : 1;
            for (std::size_t i = 0; i < x.terms.size(); ++i) {
                if (x.terms[i].first != y.terms[i].first)
                    return x.terms[i].first < y.terms[i].first ? -1 : 1;
                int c = cmp(x.terms[i].second, y.terms[i].second);
                if (c != 0) return c;
            }
            return 0;
        }
        default: {
            const auto& x = std::get<ProdData>(na.data);
            const auto& y = std::get<ProdData>(nb.data);
            if (x.factors.size() != y.factors.size())
                return x.factors.size() < y.factors.size() ? -1 : 1;
            for (std::size_t i = 0; i < x.factors.size(); ++i) {
                if (x.factors[i].second != y.factors[i].second)
                    return x.factors[i].second < y.factors[i].second ? -1 : 1;
                int c = cmp(x.factors[i].first, y.factors[i].first);
                if (c != 0) return c;
            }
            return 0;
        }
    }
}

inline bool equal(const Expr& a, const Expr& b) { return cmp(a, b) == 0; }

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return cmp(a, b) < 0; }
};

namespace detail {

inline std::size_t node_hash(const ExprNode& n) {
    std::size_t h = n.data.index() + 0x517cc1b7;
    switch (n.data.index()) {
        case 0:
            h = hash_combine(h, hash_rat(std::get<NumberData>(n.data).value));
            break;
        case 1:
            h = hash_combine(h, hash_str(std::get<VarData>(n.data).name));
            break;
        case 2: {
            const auto& j = std::get<JetData>(n.data);
            h = hash_combine(h, hash_str(j.func));
            for (const auto& s : j.index) h = hash_combine(h, hash_str(s));
            break;
        }
        case 3: {
            const auto& s = std::get<SumData>(n.data);
            h = hash_combine(h, hash_rat(s.constant));
            for (const auto& [c, t] : s.terms) {
                h = hash_combine(h, hash_rat(c));
                h = hash_combine(h, t.node().hash);
            }
            break;
        }
        default: {
            const auto& pr = std::get<ProdData>(n.data);
            for (const auto& [b, e] : pr.factors) {
                h = hash_combine(h, static_cast<std::size_t>(e));
                h = hash_combine(h, b.node().hash);
            }
            break;
        }
    }
    return h;
}

}  // namespace detail

inline Expr Expr::intern(ExprNode&& n) {
    n.hash = detail::node_hash(n);
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

inline Expr Expr::number(Rational v) {
    return intern(ExprNode{NumberData{std::move(v)}});
}

inline Expr Expr::variable(const std::string& name) {
    return intern(ExprNode{VarData{name}});
}

inline Expr Expr::jet(const std::string& func, std::vector<std::string> args,
                      std::vector<std::string> index) {
    std::sort(index.begin(), index.end());
    return intern(ExprNode{JetData{func, std::move(args), std::move(index)}});
}

// decompose an expression into (rational coefficient, core term)
inline std::pair<Rational, Expr> coeff_core(const Expr& e) {
    if (const auto* s = std::get_if<SumData>(&e.node().data)) {
        if (s->constant == 0 && s->terms.size() == 1)
            return {s->terms[0].first, s->terms[0].second};
    }
    return {Rational(1), e};
}

inline Expr Expr::add(const std::vector<Expr>& xs) {
    Rational constant(0);
    std::map<Expr, Rational, ExprLess> acc;
    auto add_term = [&](const Rational& c, const Expr& t) {
        if (c == 0) return;
        auto [it, inserted] = acc.emplace(t, c);
        if (!inserted) it->second += c;
    };
    std::vector<std::pair<Rational, Expr>> stack;
    for (const auto& x : xs) stack.emplace_back(Rational(1), x);
    while (!stack.empty()) {
        auto [c, e] = stack.back();
        stack.pop_back();
        if (const auto* n = std::get_if<NumberData>(&e.node().data)) {
            constant += c * n->value;
        } else if (const auto* s = std::get_if<SumData>(&e.node().data)) {
            constant += c * s->constant;
            for (const auto& [tc, t] : s->terms) stack.emplace_back(c * tc, t);
        } else {
            add_term(c, e);
        }
    }
    SumData out;
    out.constant = constant;
    for (auto& [t, c] : acc)
        if (c != 0) out.terms.emplace_back(c, t);
    if (out.terms.empty()) return number(out.constant);
    if (out.constant == 0 && out.terms.size() == 1 && out.terms[0].first == 1)
        return out.terms[0].second;
    return intern(ExprNode{std::move(out)});
}

inline Expr Expr::mul(const std::vector<Expr>& xs) {
    Rational coeff(1);
    std::map<Expr, std::int64_t, ExprLess> acc;
    std::vector<std::pair<Expr, std::int64_t>> stack;
    for (const auto& x : xs) stack.emplace_back(x, 1);
    while (!stack.empty()) {
        auto [e, n] = stack.back();
        stack.pop_back();
        if (const auto* num = std::get_if<NumberData>(&e.node().data)) {
            Rational v = num->value;
            if (n < 0) {
                if (v == 0) throw DivisionByZeroError("division by literal zero");
                v = 1 / v;
                n = -n;
            }
            for (std::int64_t k = 0; k < n; ++k) coeff *= v;
            continue;
        }
        auto [c, core] = coeff_core(e);
        if (c != 1) {
            Rational v = c;
            std::int64_t m = n;
            if (m < 0) {
                v = 1 / v;
                m = -m;
            }
            for (std::int64_t k = 0; k < m; ++k) coeff *= v;
        }
        if (const auto* pr = std::get_if<ProdData>(&core.node().data)) {
            for (const auto& [b, ee] : pr->factors) stack.emplace_back(b, ee * n);
            continue;
        }
        auto [it, inserted] = acc.emplace(core, n);
        if (!inserted) it->second += n;
    }
    if (coeff == 0) return number(Rational(0));
    ProdData out;
    for (auto& [b, n] : acc)
        if (n != 0) out.factors.emplace_back(b, n);
    Expr core;
    if (out.factors.empty()) return number(coeff);
    if (out.factors.size() == 1 && out.factors[0].second == 1)
        core = out.factors[0].first;
    else
        core = intern(ExprNode{std::move(out)});
    if (coeff == 1) return core;
    SumData scaled;
    scaled.constant = Rational(0);
    scaled.terms.emplace_back(coeff, core);
    return intern(ExprNode{std::move(scaled)});
}

inline Expr Expr::pow(const Expr& base, std::int64_t n) {
    if (n == 0) return number(1);
    if (n == 1) return base;
    if (const auto* num = std::get_if<NumberData>(&base.node().data)) {
        Rational v = num->value;
        if (v == 0 && n < 0) throw DivisionByZeroError("zero to a negative power");
        Rational r(1);
        Rational b = n < 0 ? Rational(1) / v : v;
        std::int64_t m = n < 0 ? -n : n;
        for (std::int64_t k = 0; k < m; ++k) r *= b;
        return number(r);
    }
    auto [c, core] = coeff_core(base);
    if (c != 1) return mul({pow(number(c), n), pow(core, n)});
    if (const auto* pr = std::get_if<ProdData>(&core.node().data)) {
        std::vector<Expr> parts;
        parts.reserve(pr->factors.size());
        for (const auto& [b, e] : pr->factors) parts.push_back(pow(b, e * n));
        return mul(parts);
    }
    ProdData out;
    out.factors.emplace_back(core, n);
    return intern(ExprNode{std::move(out)});
}

inline Expr Expr::div(const Expr& a, const Expr& b) {
    if (b.is_zero_literal()) throw DivisionByZeroError("division by literal zero");
    return mul({a, pow(b, -1)});
}

inline Expr operator+(const Expr& a, const Expr& b) { return Expr::add({a, b}); }
inline Expr operator-(const Expr& a, const Expr& b) {
    return Expr::add({a, Expr::mul({Expr::number(-1), b})});
}
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::mul({a, b}); }
inline Expr operator/(const Expr& a, const Expr& b) { return Expr::div(a, b); }
inline Expr operator-(const Expr& a) { return Expr::mul({Expr::number(-1), a}); }

// ---------------------------------------------------------------------------
// differentiation

inline Expr diff(const Expr& e, const std::string& var);

namespace detail {

inline Expr diff_impl(const Expr& e, const std::string& var,
                      std::unordered_map<const ExprNode*, Expr>& cache) {
    auto it = cache.find(e.raw());
    if (it != cache.end()) return it->second;
    Expr out;
    switch (e.node().data.index()) {
        case 0:
            out = Expr::number(0);
            break;
        case 1:
            out = Expr::number(std::get<VarData>(e.node().data).name == var ? 1 : 0);
            break;
        case 2: {
            const auto& j = std::get<JetData>(e.node().data);
            bool declared = std::find(j.args.begin(), j.args.end(), var) != j.args.end();
            if (!declared) {
                out = Expr::number(0);
            } else {
                auto idx = j.index;
                idx.push_back(var);
                out = Expr::jet(j.func, j.args, std::move(idx));
            }
            break;
        }
        case 3: {
            const auto& s = std::get<SumData>(e.node().data);
            std::vector<Expr> parts;
            parts.reserve(s.terms.size());
            for (const auto& [c, t] : s.terms)
                parts.push_back(Expr::mul({Expr::number(c), diff_impl(t, var, cache)}));
            out = Expr::add(parts);
            break;
        }
        default: {
            const auto& pr = std::get<ProdData>(e.node().data);
            std::vector<Expr> parts;
            parts.reserve(pr.factors.size());
            for (std::size_t i = 0; i < pr.factors.size(); ++i) {
                const auto& [bi, ni] = pr.factors[i];
                std::vector<Expr> term;
                term.push_back(Expr::number(ni));
                term.push_back(diff_impl(bi, var, cache));
                term.push_back(Expr::pow(bi, ni - 1));
                for (std::size_t k = 0; k < pr.factors.size(); ++k) {
                    if (k == i) continue;
                    term.push_back(Expr::pow(pr.factors[k].first, pr.factors[k].second));
                }
                parts.push_back(Expr::mul(term));
            }
            out = Expr::add(parts);
            break;
        }
    }
    cache.emplace(e.raw(), out);
    return out;
}

}  // namespace detail

inline Expr diff(const Expr& e, const std::string& var) {
    std::unordered_map<const ExprNode*, Expr> cache;
    return detail::diff_impl(e, var, cache);
}

// ---------------------------------------------------------------------------
// substitution (flat namespace: no capture concerns)

inline Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl);

namespace detail {

inline Expr subst_impl(const Expr& e, const std::map<std::string, Expr>& repl,
                       std::unordered_map<const ExprNode*, Expr>& cache) {
    auto it = cache.find(e.raw());
    if (it != cache.end()) return it->second;
    Expr out;
    switch (e.node().data.index()) {
        case 0:
        case 2:
            out = e;
            break;
        case 1: {
            auto f = repl.find(std::get<VarData>(e.node().data).name);
            out = f == repl.end() ? e : f->second;
            break;
        }
        case 3: {
            const auto& s = std::get<SumData>(e.node().data);
            std::vector<Expr> parts;
            parts.push_back(Expr::number(s.constant));
            for (const auto& [c, t] : s.terms)
                parts.push_back(Expr::mul({Expr::number(c), subst_impl(t, repl, cache)}));
            out = Expr::add(parts);
            break;
        }
        default: {
            const auto& pr = std::get<ProdData>(e.node().data);
            std::vector<Expr> parts;
            for (const auto& [b, n] : pr.factors)
                parts.push_back(Expr::pow(subst_impl(b, repl, cache), n));
            out = Expr::mul(parts);
            break;
        }
    }
    cache.emplace(e.raw(), out);
    return out;
}

}  // namespace detail

inline Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl) {
    std::unordered_map<const ExprNode*, Expr> cache;
    return detail::subst_impl(e, repl, cache);
}

inline Expr substitute(const Expr& e, const std::string& var, const Expr& g) {
    return substitute(e, std::map<std::string, Expr>{{var, g}});
}

inline std::string jet_key(const JetData& j) {
    std::string k = j.func + "[";
    for (std::size_t i = 0; i < j.index.size(); ++i) {
        if (i) k += ",";
        k += j.index[i];
    }
    return k + "]";
}

// replace jet symbols (keyed by their canonical printed form) by expressions
inline Expr substitute_jets(const Expr& e, const std::map<std::string, Expr>& repl);

namespace detail {

inline std::string jet_key_of(const Expr& e) {
    return jet_key(std::get<JetData>(e.node().data));
}

inline Expr subst_jets_impl(const Expr& e, const std::map<std::string, Expr>& repl,
                            std::unordered_map<const ExprNode*, Expr>& cache) {
    auto it = cache.find(e.raw());
    if (it != cache.end()) return it->second;
    Expr out;
    switch (e.node().data.index()) {
        case 0:
        case 1:
            out = e;
            break;
        case 2: {
            auto f = repl.find(jet_key_of(e));
            out = f == repl.end() ? e : f->second;
            break;
        }
        case 3: {
            const auto& s = std::get<SumData>(e.node().data);
            std::vector<Expr> parts;
            parts.push_back(Expr::number(s.constant));
            for (const auto& [c, t] : s.terms)
                parts.push_back(
                    Expr::mul({Expr::number(c), subst_jets_impl(t, repl, cache)}));
            out = Expr::add(parts);
            break;
        }
        default: {
            const auto& pr = std::get<ProdData>(e.node().data);
            std::vector<Expr> parts;
            for (const auto& [b, n] : pr.factors)
                parts.push_back(Expr::pow(subst_jets_impl(b, repl, cache), n));
            out = Expr::mul(parts);
            break;
        }
    }
    cache.emplace(e.raw(), out);
    return out;
}

}  // namespace detail

inline Expr substitute_jets(const Expr& e, const std::map<std::string, Expr>& repl) {
    std::unordered_map<const ExprNode*, Expr> cache;
    return detail::subst_jets_impl(e, repl, cache);
}

// ---------------------------------------------------------------------------
// evaluation over exact rationals

struct Assignment {
    std::map<std::string, Rational> vars;
    std::map<std::string, Rational> jets;  // keyed by jet_key
};

namespace detail {

inline Rational eval_impl(const Expr& e, const Assignment& a,
                          std::unordered_map<const ExprNode*, Rational>& cache) {
    auto it = cache.find(e.raw());
    if (it != cache.end()) return it->second;
    Rational out;
    switch (e.node().data.index()) {
        case 0:
            out = std::get<NumberData>(e.node().data).value;
            break;
        case 1: {
            const auto& name = std::get<VarData>(e.node().data).name;
            auto f = a.vars.find(name);
            if (f == a.vars.end()) throw EvalError("unassigned variable: " + name);
            out = f->second;
            break;
        }
        case 2: {
            auto key = jet_key(std::get<JetData>(e.node().data));
            auto f = a.jets.find(key);
            if (f == a.jets.end()) throw EvalError("unassigned jet symbol: " + key);
            out = f->second;
            break;
        }
        case 3: {
            const auto& s = std::get<SumData>(e.node().data);
            out = s.constant;
            for (const auto& [c, t] : s.terms) out += c * eval_impl(t, a, cache);
            break;
        }
        default: {
            const auto& pr = std::get<ProdData>(e.node().data);
            out = Rational(1);
            for (const auto& [b, n] : pr.factors) {
                Rational v = eval_impl(b, a, cache);
                std::int64_t m = n;
                if (m < 0) {
                    if (v == 0) throw PoleError("pole: zero denominator");
                    v = 1 / v;
                    m = -m;
                }
                for (std::int64_t k = 0; k < m; ++k) out *= v;
            }
            break;
        }
    }
    cache.emplace(e.raw(), out);
    return out;
}

}  // namespace detail

inline Rational eval(const Expr& e, const Assignment& a) {
    std::unordered_map<const ExprNode*, Rational> cache;
    return detail::eval_impl(e, a, cache);
}

// rebuild bottom-up through the canonicalizing constructors
inline Expr normalize(const Expr& e) {
    switch (e.node().data.index()) {
        case 0:
        case 1:
        case 2:
            return e;
        case 3: {
            const auto& s = std::get<SumData>(e.node().data);
            std::vector<Expr> parts;
            parts.push_back(Expr::number(s.constant));
            for (const auto& [c, t] : s.terms)
                parts.push_back(Expr::mul({Expr::number(c), normalize(t)}));
            return Expr::add(parts);
        }
        default: {
            const auto& pr = std::get<ProdData>(e.node().data);
            std::vector<Expr> parts;
            for (const auto& [b, n] : pr.factors)
                parts.push_back(Expr::pow(normalize(b), n));
            return Expr::mul(parts);
        }
    }
}

// ---------------------------------------------------------------------------
// leaves

struct Leaves {
    std::vector<std::string> vars;  // sorted, unique
    std::vector<std::string> jets;  // sorted jet keys, unique
};

namespace detail {

inline void leaves_impl(const Expr& e, std::map<std::string, bool>& vars,
                        std::map<std::string, bool>& jets,
                        std::unordered_map<const ExprNode*, bool>& seen) {
    if (seen.count(e.raw())) return;
    seen.emplace(e.raw(), true);
    switch (e.node().data.index()) {
        case 0:
            break;
        case 1:
            vars[std::get<VarData>(e.node().data).name] = true;
            break;
        case 2:
            jets[jet_key(std::get<JetData>(e.node().data))] = true;
            break;
        case 3:
            for (const auto& [c, t] : std::get<SumData>(e.node().data).terms)
                leaves_impl(t, vars, jets, seen);
            break;
        default:
            for (const auto& [b, n] : std::get<ProdData>(e.node().data).factors)
                leaves_impl(b, vars, jets, seen);
            break;
    }
}

}  // namespace detail

inline Leaves leaves(const Expr& e) {
    std::map<std::string, bool> vars, jets;
    std::unordered_map<const ExprNode*, bool> seen;
    detail::leaves_impl(e, vars, jets, seen);
    Leaves out;
    for (const auto& [k, v] : vars) out.vars.push_back(k);
    for (const auto& [k, v] : jets) out.jets.push_back(k);
    return out;
}

// ---------------------------------------------------------------------------
// printing (round-trips through the parser)

namespace detail {

inline std::string print_expr(const Expr& e);

inline bool is_atom(const Expr& e) {
    switch (e.node().data.index()) {
        case 0:
            return std::get<NumberData>(e.node().data).value >= 0 &&
                   denominator(std::get<NumberData>(e.node().data).value) == 1;
        case 1:
        case 2:
            return true;
        default:
            return false;
    }
}

inline std::string print_power_operand(const Expr& e) {
    if (is_atom(e)) return print_expr(e);
    return "(" + print_expr(e) + ")";
}

// product core (no rational coefficient), split by exponent sign
inline std::string print_prod_core(const ProdData& pr) {
    std::string num, den;
    int nnum = 0, nden = 0;
    for (const auto& [b, n] : pr.factors) {
        std::string piece = print_power_operand(b);
        if (n != 1 && n != -1)
            piece += "^" + std::to_string(n < 0 ? -n : n);
        if (n > 0) {
            if (!num.empty()) num += "*";
            num += piece;
            ++nnum;
        } else {
            if (!den.empty()) den += "*";
            den += piece;
            ++nden;
        }
    }
    if (nden == 0) return num;
    std::string lhs = num.empty() ? "1" : num;
    std::string rhs = nden > 1 ? "(" + den + ")" : den;
    return lhs + "/" + rhs;
}

// a term with positive-rational coefficient, as it appears inside a sum
inline std::string print_scaled(const Rational& coeff, const Expr& core) {
    std::string cs;
    if (coeff != 1) cs = rational_str(coeff);
    std::string body;
    if (const auto* pr = std::get_if<ProdData>(&core.node().data))
        body = print_prod_core(*pr);
    else if (std::holds_alternative<SumData>(core.node().data))
        body = "(" + print_expr(core) + ")";
    else
        body = print_expr(core);
    if (cs.empty()) return body;
    return cs + "*" + body;
}

inline std::string print_expr(const Expr& e) {
    switch (e.node().data.index()) {
        case 0: {
            const auto& v = std::get<NumberData>(e.node().data).value;
            return rational_str(v);
        }
        case 1:
            return std::get<VarData>(e.node().data).name;
        case 2: {
            const auto& j = std::get<JetData>(e.node().data);
            return jet_key(j);
        }
        case 3: {
            const auto& s = std::get<SumData>(e.node().data);
            std::string out;
            bool first = true;
            for (const auto& [c, t] : s.terms) {
                Rational ac = c < 0 ? Rational(-c) : c;
                std::string piece = print_scaled(ac, t);
                if (first) {
                    out += (c < 0 ? "-" : "") + piece;
                    first = false;
                } else {
                    out += (c < 0 ? " - " : " + ") + piece;
                }
            }
            if (s.constant != 0 || first) {
                Rational ac = s.constant < 0 ? Rational(-s.constant) : s.constant;
                if (first)
                    out += (s.constant < 0 ? "-" : "") + rational_str(ac);
                else
                    out += (s.constant < 0 ? " - " : " + ") + rational_str(ac);
            }
            return out;
        }
        default:
            return print_prod_core(std::get<ProdData>(e.node().data));
    }
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
    if (!e) return "<null>";
    if (e.is_number()) {
        const Rational& v = e.number_value();
        if (v < 0) return rational_str(v);
        return rational_str(v);
    }
    return detail::print_expr(e);
}

}  // namespace odeinv
