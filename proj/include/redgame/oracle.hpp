#ifndef REDGAME_ORACLE_HPP
#define REDGAME_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "redgame/pairing.hpp"

namespace rg {

/// Thrown when a fuel meter runs dry. `owner` identifies whose budget it was
/// (see engine.hpp Actor values); -1 means unattributed.
struct OutOfFuel {
    u64 spent = 0;
    int owner = -1;
};

class FuelMeter {
public:
    explicit FuelMeter(u64 budget, int owner = -1)
        : budget_(budget), owner_(owner) {}

    void charge(u64 n = 1) {
        if (budget_ - spent_ < n) {
            spent_ = budget_;
            throw OutOfFuel{spent_, owner_};
        }
        spent_ += n;
    }

    u64 spent() const { return spent_; }
    u64 budget() const { return budget_; }
    u64 remaining() const { return budget_ - spent_; }
    int owner() const { return owner_; }

private:
    u64 budget_;
    u64 spent_ = 0;
    int owner_;
};

struct UseLog {
    std::vector<std::pair<u64, u64>> queries;
    u64 max_position = 0;

    void record(u64 pos, u64 val) {
        queries.emplace_back(pos, val);
        if (pos > max_position) max_position = pos;
    }
};

struct RunOutcome {
    bool halted = false;
    u64 value = 0;
    UseLog use;
    u64 spent = 0;

    static RunOutcome halt(u64 value, UseLog use, u64 spent) {
        return RunOutcome{true, value, std::move(use), spent};
    }
    static RunOutcome out_of_fuel(u64 spent) {
        return RunOutcome{false, 0, {}, spent};
    }
};

enum class OracleKind { TotalFunction, EnumerationView, JoinView };

/// Total position -> value interface. Query functions must be deterministic;
/// enumeration views must be monotone in their underlying stage parameter.
struct Oracle {
    OracleKind kind = OracleKind::TotalFunction;
    std::function<u64(u64)> query;
};

inline Oracle make_oracle(std::function<u64(u64)> fn,
                          OracleKind kind = OracleKind::TotalFunction) {
    return Oracle{kind, std::move(fn)};
}

inline Oracle constant_oracle(u64 v) {
    return make_oracle([v](u64) { return v; });
}

/// join(X_0,...,X_{m-1}): position pair_code(i,x) answers X_i(x) for i < m,
/// 0 for i >= m.
inline Oracle join(std::vector<Oracle> oracles) {
    auto shared = std::make_shared<std::vector<Oracle>>(std::move(oracles));
    return Oracle{OracleKind::JoinView, [shared](u64 pos) -> u64 {
                      auto [i, x] = unpair_code(pos);
                      if (i >= shared->size()) return 0;
                      return (*shared)[i].query(x);
                  }};
}

/// One run's view of an oracle: charges one fuel unit per query and logs use.
/// `tick` lets procedures charge their own declared internal steps.
class OracleSession {
public:
    OracleSession(const Oracle& oracle, FuelMeter& meter)
        : oracle_(&oracle), meter_(&meter) {}

    u64 query(u64 pos) {
        meter_->charge(1);
        const u64 v = oracle_->query(pos);
        log_.record(pos, v);
        return v;
    }

    void tick(u64 n = 1) { meter_->charge(n); }

    const UseLog& use() const { return log_; }
    FuelMeter& meter() { return *meter_; }

private:
    const Oracle* oracle_;
    FuelMeter* meter_;
    UseLog log_;
};

using Procedure = std::function<u64(OracleSession&, u64)>;

inline RunOutcome run_instrumented(const Procedure& proc, const Oracle& oracle,
                                   u64 input, u64 fuel) {
    FuelMeter meter(fuel);
    OracleSession session(oracle, meter);
    try {
        const u64 v = proc(session, input);
        return RunOutcome::halt(v, session.use(), meter.spent());
    } catch (const OutOfFuel& e) {
        return RunOutcome::out_of_fuel(e.spent);
    }
}

struct ReplayMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rerun against a partial oracle that must cover the prior UseLog with the
/// same values; positions outside the assignment fall back to 0.
inline RunOutcome replay(const Procedure& proc,
                         const std::map<u64, u64>& assignment,
                         const UseLog& prior, u64 input, u64 fuel) {
    for (const auto& [pos, val] : prior.queries) {
        auto it = assignment.find(pos);
        if (it != assignment.end() && it->second != val)
            throw ReplayMismatch("assignment contradicts prior use at position " +
                                 std::to_string(pos));
    }
    Oracle partial = make_oracle([&assignment](u64 pos) -> u64 {
        auto it = assignment.find(pos);
        return it == assignment.end() ? 0 : it->second;
    });
    return run_instrumented(proc, partial, input, fuel);
}

/// FNV-1a, used for move digests and seed mixing.
inline u64 fnv1a(u64 h, u64 word) {
    for (int i = 0; i < 8; ++i) {
        h ^= (word >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
    }
    return h;
}

constexpr u64 kFnvOffset = 14695981039346656037ULL;

inline u64 mix_seed(u64 seed, u64 salt) { return fnv1a(fnv1a(kFnvOffset, seed), salt); }

} // namespace rg

#endif
