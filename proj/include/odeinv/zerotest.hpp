#pragma once

// Probabilistic identity testing over exact rationals (Schwartz-Zippel).
// Deterministic per seed; poles trigger resampling.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "odeinv/expr.hpp"

namespace odeinv {

struct InconclusiveError : std::runtime_error {
    explicit InconclusiveError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroTestConfig {
    std::uint64_t seed = 0xC0FFEEULL;
    int trials = 24;
    int max_retries_per_trial = 8;
    std::int64_t num_range = 10000;  // numerators from [-num_range, num_range]
    std::int64_t den_range = 1000;   // denominators from [1, den_range]
};

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi]; slight modulo bias is irrelevant here
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() %
                                              static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

inline Assignment sample_assignment(const Leaves& lv, SplitMix64& rng,
                                    const ZeroTestConfig& cfg) {
    Assignment a;
    auto draw = [&]() {
        std::int64_t num = rng.range(-cfg.num_range, cfg.num_range);
        std::int64_t den = rng.range(1, cfg.den_range);
        return make_rational(num, den);
    };
    for (const auto& v : lv.vars) a.vars[v] = draw();
    for (const auto& j : lv.jets) a.jets[j] = draw();
    return a;
}

struct Witness {
    Assignment assignment;
    Rational value;
};

struct ZeroVerdict {
    bool zero = false;
    std::optional<Witness> witness;  // set when !zero
};

inline ZeroVerdict is_zero(const Expr& e, const ZeroTestConfig& cfg = {}) {
    if (e.is_number()) {
        if (e.number_value() == 0) return {true, std::nullopt};
        return {false, Witness{Assignment{}, e.number_value()}};
    }
    Leaves lv = leaves(e);
    SplitMix64 rng(cfg.seed);
    int completed = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        bool done = false;
        for (int retry = 0; retry <= cfg.max_retries_per_trial && !done; ++retry) {
            Assignment a = sample_assignment(lv, rng, cfg);
            try {
                Rational v = eval(e, a);
                done = true;
                ++completed;
                if (v != 0) return {false, Witness{std::move(a), std::move(v)}};
            } catch (const PoleError&) {
                continue;
            }
        }
    }
    if (completed == 0)
        throw InconclusiveError("pole retries exhausted on every trial");
    return {true, std::nullopt};
}

}  // namespace odeinv
