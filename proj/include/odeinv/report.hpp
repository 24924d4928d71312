#pragma once

// Machine-readable reports: verdict tables rendered as text or JSON.
// JSON layout is stable: identical input + seed gives byte-identical
// output.

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "odeinv/zerotest.hpp"

namespace odeinv {

struct InvariantEntry {
    std::string name;
    bool zero = false;
    std::optional<Witness> witness;
    std::optional<std::string> expr_str;
};

struct Report {
    std::string kind;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<InvariantEntry> invariants;
    std::vector<std::pair<std::string, bool>> flags;
    std::vector<std::string> notes;
};

inline nlohmann::ordered_json witness_json(const Witness& w) {
    nlohmann::ordered_json jw;
    nlohmann::ordered_json vars = nlohmann::ordered_json::object();
    for (const auto& [k, v] : w.assignment.vars) vars[k] = rational_str(v);
    nlohmann::ordered_json jets = nlohmann::ordered_json::object();
    for (const auto& [k, v] : w.assignment.jets) jets[k] = rational_str(v);
    jw["vars"] = vars;
    jw["jets"] = jets;
    jw["value"] = rational_str(w.value);
    return jw;
}

inline nlohmann::ordered_json report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["kind"] = r.kind;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    nlohmann::ordered_json inv = nlohmann::ordered_json::object();
    for (const auto& e : r.invariants) {
        nlohmann::ordered_json je;
        je["verdict"] = e.zero ? "zero" : "nonzero";
        if (e.witness) je["witness"] = witness_json(*e.witness);
        if (e.expr_str) je["expr"] = *e.expr_str;
        inv[e.name] = je;
    }
    j["invariants"] = inv;
    nlohmann::ordered_json fl = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.flags) fl[k] = v;
    j["flags"] = fl;
    j["notes"] = r.notes;
    return j;
}

inline void print_report_text(std::ostream& os, const Report& r) {
    os << "kind: " << r.kind << "  (seed " << r.seed << ", trials " << r.trials
       << ")\n";
    for (const auto& e : r.invariants) {
        os << "  " << e.name << ": " << (e.zero ? "zero" : "nonzero");
        if (e.witness) os << "  [witness value " << rational_str(e.witness->value) << "]";
        if (e.expr_str) os << "\n      = " << *e.expr_str;
        os << "\n";
    }
    for (const auto& [k, v] : r.flags)
        os << "  " << k << ": " << (v ? "true" : "false") << "\n";
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
}

}  // namespace odeinv
