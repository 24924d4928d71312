#pragma once

// Problem-file parsing.  Line-oriented format:
//
//   kind = ode4 | ode3pair | lagrangian2 | lagrangian_pair | monge | orthopath
//   declare g(x,y,p)
//   f = (4*r^2)/(3*q)          # ode4
//   f1 = ... / f2 = ...        # ode3pair
//   L = ...                    # lagrangian2
//   L1/L2/L0 = ...             # lagrangian_pair
//   F = ...                    # monge
//   signature = (2,1)          # orthopath, then I[a,b,c] = ..., R[a,b] = ...
//
// '#' starts a comment; unknown keys are rejected.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "odeinv/orthopath.hpp"
#include "odeinv/parse.hpp"

namespace odeinv {

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ProblemKind {
    Ode4,
    Ode3Pair,
    Lagrangian2ndScalar,
    LagrangianDegeneratePair,
    MongeForm,
    OrthopathData
};

inline const char* kind_name(ProblemKind k) {
    switch (k) {
        case ProblemKind::Ode4: return "ode4";
        case ProblemKind::Ode3Pair: return "ode3pair";
        case ProblemKind::Lagrangian2ndScalar: return "lagrangian2";
        case ProblemKind::LagrangianDegeneratePair: return "lagrangian_pair";
        case ProblemKind::MongeForm: return "monge";
        default: return "orthopath";
    }
}

struct Problem {
    ProblemKind kind;
    ParseContext ctx;
    std::map<std::string, Expr> exprs;     // f, f1, f2, L, L1, L2, L0, F
    std::optional<FinslerData> finsler;    // orthopath payload
};

namespace detail {

inline std::string trim_copy(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::set<std::string> kind_variables(ProblemKind k) {
    switch (k) {
        case ProblemKind::Ode4: return {"x", "y", "p", "q", "r"};
        case ProblemKind::Ode3Pair:
            return {"x", "y1", "y2", "p1", "p2", "q1", "q2"};
        case ProblemKind::Lagrangian2ndScalar: return {"x", "y", "p", "q"};
        case ProblemKind::LagrangianDegeneratePair:
            return {"x", "y1", "y2", "p1", "p2"};
        case ProblemKind::MongeForm: return {"x", "y", "p", "q"};
        default: return {};
    }
}

inline std::vector<std::string> required_keys(ProblemKind k) {
    switch (k) {
        case ProblemKind::Ode4: return {"f"};
        case ProblemKind::Ode3Pair: return {"f1", "f2"};
        case ProblemKind::Lagrangian2ndScalar: return {"L"};
        case ProblemKind::LagrangianDegeneratePair: return {"L1", "L2", "L0"};
        case ProblemKind::MongeForm: return {"F"};
        default: return {};
    }
}

// component key like I[1,2,2]; indices are 1-based in files
struct ComponentRef {
    std::string tensor;
    std::vector<int> idx;
};

inline std::optional<ComponentRef> parse_component_key(const std::string& key) {
    auto lb = key.find('[');
    if (lb == std::string::npos || key.back() != ']') return std::nullopt;
    ComponentRef ref;
    ref.tensor = key.substr(0, lb);
    std::string inner = key.substr(lb + 1, key.size() - lb - 2);
    std::stringstream ss(inner);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        piece = trim_copy(piece);
        if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
            return std::nullopt;
        ref.idx.push_back(std::stoi(piece));
    }
    return ref;
}

}  // namespace detail

inline Problem parse_problem(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::optional<ProblemKind> kind;
    std::vector<std::pair<int, std::string>> body;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = detail::trim_copy(raw);
        if (line.empty()) continue;
        if (!kind) {
            auto eq = line.find('=');
            if (eq == std::string::npos ||
                detail::trim_copy(line.substr(0, eq)) != "kind")
                throw SchemaError("first line must be 'kind = <kind>' (line " +
                                  std::to_string(lineno) + ")");
            std::string v = detail::trim_copy(line.substr(eq + 1));
            if (v == "ode4") kind = ProblemKind::Ode4;
            else if (v == "ode3pair") kind = ProblemKind::Ode3Pair;
            else if (v == "lagrangian2") kind = ProblemKind::Lagrangian2ndScalar;
            else if (v == "lagrangian_pair") kind = ProblemKind::LagrangianDegeneratePair;
            else if (v == "monge") kind = ProblemKind::MongeForm;
            else if (v == "orthopath") kind = ProblemKind::OrthopathData;
            else throw SchemaError("unknown kind '" + v + "'");
            continue;
        }
        body.emplace_back(lineno, line);
    }
    if (!kind) throw SchemaError("missing 'kind = ...' line");

    Problem prob;
    prob.kind = *kind;
    prob.ctx.variables = detail::kind_variables(*kind);

    std::optional<SignatureEps> sig;
    std::vector<std::tuple<int, detail::ComponentRef, std::string>> components;

    for (const auto& [ln, line] : body) {
        if (line.rfind("declare ", 0) == 0) {
            std::string rest = detail::trim_copy(line.substr(8));
            auto lp = rest.find('(');
            if (lp == std::string::npos || rest.back() != ')')
                throw SchemaError("malformed declare on line " + std::to_string(ln));
            std::string fname = detail::trim_copy(rest.substr(0, lp));
            std::string inner = rest.substr(lp + 1, rest.size() - lp - 2);
            std::vector<std::string> args;
            std::stringstream ss(inner);
            std::string piece;
            while (std::getline(ss, piece, ',')) {
                piece = detail::trim_copy(piece);
                if (piece.empty()) continue;
                if (!prob.ctx.variables.count(piece))
                    throw SchemaError("declare " + fname + ": '" + piece +
                                      "' is not a coordinate of kind " +
                                      kind_name(*kind) + " (line " +
                                      std::to_string(ln) + ")");
                args.push_back(piece);
            }
            if (prob.ctx.functions.count(fname))
                throw SchemaError("duplicate declaration of '" + fname + "'");
            prob.ctx.functions[fname] = args;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SchemaError("expected 'key = value' on line " + std::to_string(ln));
        std::string key = detail::trim_copy(line.substr(0, eq));
        std::string val = detail::trim_copy(line.substr(eq + 1));

        if (*kind == ProblemKind::OrthopathData) {
            if (key == "signature") {
                if (val.size() < 5 || val.front() != '(' || val.back() != ')')
                    throw SchemaError("signature must look like (p,q), line " +
                                      std::to_string(ln));
                std::string inner = val.substr(1, val.size() - 2);
                auto comma = inner.find(',');
                if (comma == std::string::npos)
                    throw SchemaError("signature must look like (p,q)");
                SignatureEps s;
                s.plus = std::stoi(detail::trim_copy(inner.substr(0, comma)));
                s.minus = std::stoi(detail::trim_copy(inner.substr(comma + 1)));
                if (s.dim() < 2)
                    throw SchemaError("signature needs p + q >= 2");
                sig = s;
                continue;
            }
            auto ref = detail::parse_component_key(key);
            if (ref) {
                components.emplace_back(ln, *ref, val);
                continue;
            }
            throw SchemaError("unknown key '" + key + "' on line " +
                              std::to_string(ln));
        }

        auto req = detail::required_keys(*kind);
        if (std::find(req.begin(), req.end(), key) == req.end())
            throw SchemaError("unknown key '" + key + "' for kind " +
                              std::string(kind_name(*kind)) + " (line " +
                              std::to_string(ln) + ")");
        if (prob.exprs.count(key))
            throw SchemaError("duplicate key '" + key + "'");
        prob.exprs[key] = parse_expr(val, prob.ctx);
    }

    if (*kind == ProblemKind::OrthopathData) {
        if (!sig) throw SchemaError("orthopath problem needs 'signature = (p,q)'");
        FinslerData d = FinslerData::zero(*sig);
        int n1 = sig->dim();
        std::set<std::string> seen;
        for (const auto& [ln, ref, val] : components) {
            Expr e = parse_expr(val, prob.ctx);
            auto need_rank = [&](std::size_t r) {
                if (ref.idx.size() != r)
                    throw SchemaError(ref.tensor + " needs " + std::to_string(r) +
                                      " indices (line " + std::to_string(ln) + ")");
            };
            for (int i : ref.idx)
                if (i < 1 || i > n1)
                    throw SchemaError("index out of range 1.." +
                                      std::to_string(n1) + " on line " +
                                      std::to_string(ln));
            std::vector<int> z;
            for (int i : ref.idx) z.push_back(i - 1);
            if (ref.tensor == "I") {
                need_rank(3);
                std::vector<int> s = z;
                std::sort(s.begin(), s.end());
                std::string skey = "I" + std::to_string(s[0]) +
                                   std::to_string(s[1]) + std::to_string(s[2]);
                if (!seen.insert(skey).second)
                    throw SchemaError("duplicate symmetric component on line " +
                                      std::to_string(ln));
                // fill the full symmetric orbit
                std::vector<int> perm = s;
                do {
                    d.I.at(perm) = e;
                } while (std::next_permutation(perm.begin(), perm.end()));
            } else if (ref.tensor == "R") {
                need_rank(2);
                std::vector<int> s = z;
                std::sort(s.begin(), s.end());
                std::string skey = "R" + std::to_string(s[0]) + std::to_string(s[1]);
                if (!seen.insert(skey).second)
                    throw SchemaError("duplicate symmetric component on line " +
                                      std::to_string(ln));
                d.R.at({s[0], s[1]}) = e;
                d.R.at({s[1], s[0]}) = e;
            } else if (ref.tensor == "Idot" || ref.tensor == "Ibar") {
                need_rank(2);
                std::string skey = ref.tensor + std::to_string(z[0]) +
                                   std::to_string(z[1]);
                if (!seen.insert(skey).second)
                    throw SchemaError("duplicate component on line " +
                                      std::to_string(ln));
                (ref.tensor == "Idot" ? d.Idot : d.Ibar).at(z) = e;
            } else if (ref.tensor == "J") {
                need_rank(1);
                std::string skey = "J" + std::to_string(z[0]);
                if (!seen.insert(skey).second)
                    throw SchemaError("duplicate component on line " +
                                      std::to_string(ln));
                d.J.at(z) = e;
            } else {
                throw SchemaError("unknown tensor '" + ref.tensor + "' on line " +
                                  std::to_string(ln));
            }
        }
        prob.finsler = std::move(d);
        return prob;
    }

    for (const auto& key : detail::required_keys(*kind))
        if (!prob.exprs.count(key))
            throw SchemaError(std::string("missing required key '") + key +
                              "' for kind " + kind_name(*kind));
    return prob;
}

}  // namespace odeinv
