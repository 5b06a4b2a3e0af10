#ifndef REDGAME_ENGINE_HPP
#define REDGAME_ENGINE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "redgame/problems.hpp"

namespace rg {

constexpr int kPlayer1 = 1;
constexpr int kPlayer2 = 2;

struct GameConfig {
    u64 depth = 32;
    u64 fuel_per_move = 100000;
    u64 max_p2_moves = 16;
    u64 seed = 0;
};

/// Player 2's metered window onto join(X_0, ..., X_{n-1}). Strategies and
/// their move payloads see history only through this handle, so their use is
/// logged and their cost lands on the move's fuel budget. Item 0 is the
/// opening P-instance; item i >= 1 is Player 1's i-th answer. All items use
/// the canonical coded form (header at local position 0).
class HistoryView {
public:
    HistoryView(std::vector<Oracle> items, std::shared_ptr<FuelMeter> meter) {
        st_ = std::make_shared<State>();
        st_->count = items.size();
        st_->joined = join(std::move(items));
        st_->meter = std::move(meter);
    }

    u64 items() const { return st_->count; }

    u64 raw(u64 item, u64 local) const {
        st_->meter->charge(1);
        const u64 pos = pair_code(item, local);
        const u64 v = st_->joined.query(pos);
        st_->log.record(pos, v);
        return v;
    }

    u64 header(u64 item) const { return raw(item, 0); }
    u64 at(u64 item, u64 x) const { return raw(item, 1 + x); }
    u64 pair_at(u64 item, u64 x, u64 y) const { return raw(item, 1 + pair_code(x, y)); }
    u64 answer_number(u64 item) const { return raw(item, 0); }
    u64 stream_at(u64 item, u64 n) const { return raw(item, 1 + n); }

    /// Token batch an enumeration item emitted exactly at `stage`.
    std::vector<u64> batch(u64 item, u64 stage) const {
        std::vector<u64> out;
        for (u64 j = 0;; ++j) {
            const u64 v = raw(item, 1 + pair_code(stage, j));
            if (v == 0) break;
            out.push_back(v - 1);
        }
        return out;
    }

    std::vector<u64> tokens_by(u64 item, u64 stage) const {
        std::vector<u64> out;
        for (u64 s = 0; s <= stage; ++s) {
            auto b = batch(item, s);
            out.insert(out.end(), b.begin(), b.end());
        }
        return out;
    }

    void tick(u64 n = 1) const { st_->meter->charge(n); }
    const UseLog& use() const { return st_->log; }
    FuelMeter& meter() const { return *st_->meter; }

private:
    struct State {
        Oracle joined;
        std::shared_ptr<FuelMeter> meter;
        UseLog log;
        u64 count = 0;
    };
    std::shared_ptr<State> st_;
};

struct StrategyContext {
    HistoryView hist;
    u64 move_index = 1; // 1-based count of Player 2 moves
    u64 depth = 32;
};

struct P2MoveOut {
    bool victory = false;
    Instance instance;          // when not victory
    SolutionCandidate solution; // when victory
};

struct Strategy {
    std::string name;
    std::optional<u64> declared_bound; // the n of an (n+1)-move win claim
    bool reconstruction = false;       // construction not spelled out in the source
    std::string source;                // literature attribution, empty if original
    std::function<P2MoveOut(StrategyContext&)> step;
};

/// Player 1. `open` produces the opening P-instance; `respond` answers the
/// idx-th Q-instance (1-based). nullopt means stuck (cannot move).
struct Adversary {
    std::string name;
    std::function<std::optional<Instance>(u64, const GameConfig&)> open;
    std::function<std::optional<SolutionCandidate>(const Instance&, u64, const GameConfig&)>
        respond;
};

enum class VerdictKind {
    P2Win,
    P1WinStuckOpponent,
    P2WinStuckOpponent,
    IllegalMove,
    FuelExhausted,
    NonterminatingCutoff,
};

struct Verdict {
    VerdictKind kind = VerdictKind::NonterminatingCutoff;
    u64 p2_moves = 0; // for P2Win: Player 2 moves played, victory included
    int player = 0;   // offender for IllegalMove / FuelExhausted
    std::optional<Witness> witness;

    bool p1_favorable() const {
        switch (kind) {
        case VerdictKind::P2Win:
        case VerdictKind::P2WinStuckOpponent:
            return false;
        case VerdictKind::P1WinStuckOpponent:
        case VerdictKind::NonterminatingCutoff:
            return true;
        case VerdictKind::IllegalMove:
        case VerdictKind::FuelExhausted:
            return player == kPlayer2;
        }
        return false;
    }
};

struct MoveRecord {
    int player = 0;
    u64 index = 0;    // P2 move number; 0 for Player 1 moves
    std::string kind; // p1_instance | p2_q_instance | p2_victory | p1_solution
    std::vector<std::pair<u64, u64>> payload; // depth-truncated (position, value)
    u64 digest = 0;
    CheckResult::Status check = CheckResult::Status::Accepted;
};

struct Transcript {
    std::string p, q;
    std::string strategy, adversary;
    GameConfig config;
    std::vector<MoveRecord> moves;
    Verdict verdict;
};

// ---------------------------------------------------------------------------
// depth-truncated payload tables and digests
// ---------------------------------------------------------------------------

namespace detail {

inline void emit_instance_table(const Instance& inst, u64 depth,
                                const std::function<void(u64, u64)>& put,
                                u64 shift, const std::function<u64(u64)>& remap) {
    // `remap` rewrites local positions when the instance is nested (star/hat)
    auto emit = [&](u64 local, u64 v) { put(remap(local + shift), v); };
    switch (inst.kind) {
    case InstanceKind::TotalColoring:
    case InstanceKind::RangeBoundedColoring:
    case InstanceKind::ArbitrarySet:
        emit(0, inst.header0());
        for (u64 x = 0; x < depth; ++x) emit(1 + x, inst.fn(x));
        break;
    case InstanceKind::PairColoring:
        emit(0, inst.header0());
        for (u64 y = 1; y < depth; ++y)
            for (u64 x = 0; x < y; ++x) emit(1 + pair_code(x, y), inst.fn2(x, y));
        break;
    case InstanceKind::PlainEnumeration:
    case InstanceKind::TaggedFamilyEnumeration:
    case InstanceKind::PairEnumeration:
        emit(0, inst.header0());
        for (u64 s = 0; s < depth; ++s) {
            auto b = inst.enu.emit(s);
            for (u64 j = 0; j < b.size(); ++j) emit(1 + pair_code(s, j), b[j] + 1);
        }
        break;
    case InstanceKind::StarComposite: {
        emit(0, inst.components.size());
        for (u64 i = 0; i < inst.components.size(); ++i) {
            auto sub = [i, &remap, shift](u64 local) {
                return remap(shift + 1 + pair_code(i, local));
            };
            emit_instance_table(inst.components[i], depth, put, 0, sub);
        }
        break;
    }
    case InstanceKind::HatInstance:
        if (inst.hat_empty) {
            emit(0, 0);
        } else {
            emit(0, 1);
            auto sub = [&remap, shift](u64 local) { return remap(shift + 1 + local); };
            emit_instance_table(inst.components[0], depth, put, 0, sub);
        }
        break;
    }
}

inline u64 identity_remap(u64 x) { return x; }

} // namespace detail

inline std::vector<std::pair<u64, u64>> instance_table(const Instance& inst, u64 depth) {
    std::vector<std::pair<u64, u64>> out;
    detail::emit_instance_table(
        inst, depth, [&out](u64 p, u64 v) { out.emplace_back(p, v); }, 0,
        detail::identity_remap);
    return out;
}

inline std::vector<std::pair<u64, u64>> solution_table(const SolutionCandidate& cand,
                                                       u64 depth) {
    std::vector<std::pair<u64, u64>> out;
    switch (cand.kind) {
    case SolutionCandidate::Kind::Number:
        out.emplace_back(0, cand.number);
        break;
    case SolutionCandidate::Kind::Tuple:
        out.emplace_back(0, cand.tuple.size());
        for (u64 i = 0; i < cand.tuple.size(); ++i) out.emplace_back(1 + i, cand.tuple[i]);
        break;
    case SolutionCandidate::Kind::Stream:
        out.emplace_back(0, 0);
        for (u64 n = 0; n < depth; ++n) out.emplace_back(1 + n, cand.stream(n));
        break;
    case SolutionCandidate::Kind::StreamTuple:
        out.emplace_back(0, cand.streams.size());
        for (u64 i = 0; i < cand.streams.size(); ++i)
            for (u64 n = 0; n < depth; ++n)
                out.emplace_back(1 + pair_code(i, n), cand.streams[i](n));
        break;
    case SolutionCandidate::Kind::Empty:
        break;
    }
    return out;
}

inline u64 table_digest(const std::vector<std::pair<u64, u64>>& table) {
    u64 h = kFnvOffset;
    for (const auto& [p, v] : table) {
        h = fnv1a(h, p);
        h = fnv1a(h, v);
    }
    return h;
}

// ---------------------------------------------------------------------------
// the game loop
// ---------------------------------------------------------------------------

inline Transcript play_game(const ProblemSpec& P, const ProblemSpec& Q,
                            const Strategy& strategy, const Adversary& adversary,
                            const GameConfig& config) {
    Transcript t;
    t.p = P.name;
    t.q = Q.name;
    t.strategy = strategy.name;
    t.adversary = adversary.name;
    t.config = config;

    auto seal = [&](Verdict v) {
        t.verdict = std::move(v);
        return t;
    };

    std::optional<Instance> x0 = adversary.open(config.seed, config);
    if (!x0)
        return seal({VerdictKind::P2WinStuckOpponent, 0, kPlayer1, std::nullopt});

    {
        MoveRecord rec;
        rec.player = kPlayer1;
        rec.kind = "p1_instance";
        CheckResult r = P.validate_instance(*x0, config.depth);
        rec.check = r.status;
        rec.payload = instance_table(*x0, config.depth);
        rec.digest = table_digest(rec.payload);
        t.moves.push_back(std::move(rec));
        if (r.refuted())
            return seal({VerdictKind::IllegalMove, 0, kPlayer1, r.witness});
    }

    std::vector<Oracle> history{coded_oracle(*x0)};
    u64 q_count = 0;

    for (u64 mi = 1; mi <= config.max_p2_moves; ++mi) {
        auto meter = std::make_shared<FuelMeter>(config.fuel_per_move, kPlayer2);
        HistoryView hist(history, meter);
        StrategyContext ctx{hist, mi, config.depth};

        P2MoveOut out;
        try {
            out = strategy.step(ctx);
        } catch (const OutOfFuel& e) {
            return seal({VerdictKind::FuelExhausted, mi,
                         e.owner < 0 ? kPlayer2 : e.owner, std::nullopt});
        }

        if (out.victory) {
            MoveRecord rec;
            rec.player = kPlayer2;
            rec.index = mi;
            rec.kind = "p2_victory";
            try {
                rec.payload = solution_table(out.solution, config.depth);
                rec.digest = table_digest(rec.payload);
                CheckResult r = P.check_solution(*x0, out.solution, config.depth);
                rec.check = r.status;
                t.moves.push_back(std::move(rec));
                if (r.refuted())
                    return seal({VerdictKind::IllegalMove, mi, kPlayer2, r.witness});
            } catch (const OutOfFuel& e) {
                return seal({VerdictKind::FuelExhausted, mi,
                             e.owner < 0 ? kPlayer2 : e.owner, std::nullopt});
            }
            return seal({VerdictKind::P2Win, mi, kPlayer2, std::nullopt});
        }

        // a Q-instance move
        MoveRecord rec;
        rec.player = kPlayer2;
        rec.index = mi;
        rec.kind = "p2_q_instance";
        try {
            rec.payload = instance_table(out.instance, config.depth);
            rec.digest = table_digest(rec.payload);
            CheckResult r = Q.validate_instance(out.instance, config.depth);
            rec.check = r.status;
            t.moves.push_back(std::move(rec));
            if (r.refuted())
                return seal({VerdictKind::IllegalMove, mi, kPlayer2, r.witness});
        } catch (const OutOfFuel& e) {
            return seal({VerdictKind::FuelExhausted, mi,
                         e.owner < 0 ? kPlayer2 : e.owner, std::nullopt});
        }

        ++q_count;
        std::optional<SolutionCandidate> answer;
        try {
            answer = adversary.respond(out.instance, q_count, config);
        } catch (const OutOfFuel& e) {
            return seal({VerdictKind::FuelExhausted, mi,
                         e.owner < 0 ? kPlayer1 : e.owner, std::nullopt});
        }
        if (!answer)
            return seal({VerdictKind::P2WinStuckOpponent, mi, kPlayer1, std::nullopt});

        MoveRecord arec;
        arec.player = kPlayer1;
        arec.kind = "p1_solution";
        try {
            arec.payload = solution_table(*answer, config.depth);
            arec.digest = table_digest(arec.payload);
            CheckResult r = Q.check_solution(out.instance, *answer, config.depth);
            arec.check = r.status;
            t.moves.push_back(std::move(arec));
            if (r.refuted())
                return seal({VerdictKind::IllegalMove, mi, kPlayer1, r.witness});
        } catch (const OutOfFuel& e) {
            return seal({VerdictKind::FuelExhausted, mi,
                         e.owner < 0 ? kPlayer1 : e.owner, std::nullopt});
        }

        history.push_back(coded_oracle(*answer));
    }

    return seal({VerdictKind::NonterminatingCutoff, config.max_p2_moves, 0, std::nullopt});
}

inline bool verify_win_bound(const Transcript& t, u64 n) {
    return t.verdict.kind == VerdictKind::P2Win && t.verdict.p2_moves <= n + 1;
}

/// Structural audit: alternation, first move, terminal victory.
inline bool structurally_valid(const Transcript& t) {
    if (t.moves.empty())
        return t.verdict.kind == VerdictKind::P2WinStuckOpponent;
    if (t.moves[0].kind != "p1_instance") return false;
    for (u64 i = 0; i < t.moves.size(); ++i) {
        const int expect = (i % 2 == 0) ? kPlayer1 : kPlayer2;
        if (t.moves[i].player != expect) return false;
        if (t.moves[i].kind == "p2_victory" && i + 1 != t.moves.size()) return false;
    }
    if (t.verdict.kind == VerdictKind::P2Win &&
        t.moves.back().kind != "p2_victory")
        return false;
    return true;
}

/// First move index where two transcripts diverge (by digest), if any.
inline std::optional<u64> first_divergence(const Transcript& a, const Transcript& b) {
    const u64 n = std::min(a.moves.size(), b.moves.size());
    for (u64 i = 0; i < n; ++i)
        if (a.moves[i].digest != b.moves[i].digest) return i;
    if (a.moves.size() != b.moves.size()) return n;
    if (a.verdict.kind != b.verdict.kind || a.verdict.p2_moves != b.verdict.p2_moves)
        return n;
    return std::nullopt;
}

} // namespace rg

#endif
