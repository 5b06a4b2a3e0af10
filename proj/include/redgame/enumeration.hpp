#ifndef REDGAME_ENUMERATION_HPP
#define REDGAME_ENUMERATION_HPP

#include <functional>
#include <memory>
#include <vector>

#include "redgame/oracle.hpp"

namespace rg {

/// Stage-indexed monotone enumeration. `emit(s)` is the finite batch of
/// tokens arriving exactly at stage s; the enumerated set by stage s is the
/// union of batches 0..s. Batches must be deterministic per stage.
struct Enumeration {
    std::function<std::vector<u64>(u64)> emit;

    std::vector<u64> tokens_by(u64 stage) const {
        std::vector<u64> out;
        for (u64 s = 0; s <= stage; ++s) {
            auto batch = emit(s);
            out.insert(out.end(), batch.begin(), batch.end());
        }
        return out;
    }

    static Enumeration silent() {
        return Enumeration{[](u64) { return std::vector<u64>{}; }};
    }

    /// Finite schedule: batch s = schedule[s], silent afterwards.
    static Enumeration from_schedule(std::vector<std::vector<u64>> schedule) {
        auto sched = std::make_shared<std::vector<std::vector<u64>>>(std::move(schedule));
        return Enumeration{[sched](u64 s) -> std::vector<u64> {
            if (s >= sched->size()) return {};
            return (*sched)[s];
        }};
    }
};

} // namespace rg

#endif
