#ifndef REDGAME_ADVERSARIES_HPP
#define REDGAME_ADVERSARIES_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "redgame/engine.hpp"
#include "redgame/problems.hpp"
#include "redgame/strategies.hpp"

namespace rg {

// ---------------------------------------------------------------------------
// honest adversary
//
// Answers Player 2's instances by direct observation: tail-majority colors
// for coloring questions (sound for the eventually periodic colorings every
// shipped generator and strategy produces) and horizon scans for
// enumerations. No certificates are consulted for responses, so it works on
// strategy-built instances too.
// ---------------------------------------------------------------------------

namespace detail {

inline u64 majority_value(const std::function<u64(u64)>& f, u64 lo, u64 hi) {
    std::map<u64, u64> counts;
    for (u64 x = lo; x < hi; ++x) ++counts[f(x)];
    u64 best = 0, bestc = 0;
    for (const auto& [v, c] : counts)
        if (c > bestc) {
            best = v;
            bestc = c;
        }
    return best;
}

inline u64 max_token_by(const Enumeration& e, u64 horizon,
                        const std::function<u64(u64)>& project) {
    u64 mx = 0;
    for (u64 s = 0; s < horizon; ++s)
        for (u64 t : e.emit(s)) mx = std::max(mx, project(t));
    return mx;
}

inline std::string star_base(const std::string& name) {
    return name.substr(5, name.size() - 6);
}
inline std::string hat_base(const std::string& name) {
    return name.substr(4, name.size() - 5);
}

} // namespace detail

inline std::optional<SolutionCandidate> honest_answer(const std::string& q_name,
                                                      const Instance& inst,
                                                      const GameConfig& cfg) {
    const u64 d = cfg.depth;
    const u64 horizon = 4 * d + 64;
    const u64 wlo = 4 * d, whi = 8 * d; // tail window for majority colors
    const u64 gap = 2 * d;              // thinning gap beyond any sampler delay

    if (q_name.rfind("star(", 0) == 0) {
        const std::string base = detail::star_base(q_name);
        std::vector<u64> numbers;
        std::vector<std::function<u64(u64)>> streams;
        bool number_kind = true;
        for (const auto& comp : inst.components) {
            auto sub = honest_answer(base, comp, cfg);
            if (!sub) return std::nullopt;
            if (sub->kind == SolutionCandidate::Kind::Number)
                numbers.push_back(sub->number);
            else if (sub->kind == SolutionCandidate::Kind::Stream) {
                number_kind = false;
                streams.push_back(sub->stream);
            } else
                return std::nullopt;
        }
        if (number_kind) return SolutionCandidate::of_tuple(numbers);
        if (streams.size() != inst.components.size()) return std::nullopt;
        return SolutionCandidate::of_streams(streams);
    }
    if (q_name.rfind("hat(", 0) == 0) {
        if (inst.hat_empty) return SolutionCandidate::empty();
        return honest_answer(detail::hat_base(q_name), inst.components.at(0), cfg);
    }

    if (q_name.rfind("rt1", 0) == 0 || q_name == "strt1_fin") {
        auto f = inst.fn;
        const u64 v = detail::majority_value(f, wlo, whi);
        return SolutionCandidate::of_stream(fiber_stream(f, v));
    }
    if (q_name == "srt22" || q_name == "d22" || q_name == "lh") {
        auto c = inst.fn2;
        auto lim = [c, gap](u64 x) { return c(x, x + gap + 1); };
        const u64 v = q_name == "lh" ? 1 : detail::majority_value(lim, wlo, whi);
        if (q_name == "d22") return SolutionCandidate::of_stream(fiber_stream(lim, v));
        return SolutionCandidate::of_stream(thinned_fiber_stream(lim, v, gap));
    }
    if (q_name == "bound")
        return SolutionCandidate::of_number(
            detail::max_token_by(inst.enu, horizon, [](u64 t) { return t; }));
    if (q_name == "bound_star")
        return SolutionCandidate::of_number(detail::max_token_by(
            inst.enu, horizon, [](u64 t) { return unpair_code(t).second; }));
    if (q_name == "stbound_star")
        return SolutionCandidate::of_number(detail::max_token_by(
            inst.enu, horizon, [](u64 t) { return unpair_code(t).second; }));
    if (q_name == "c_nat" || q_name == "uc_nat") {
        std::set<u64> excluded;
        for (u64 s = 0; s < horizon; ++s)
            for (u64 t : inst.enu.emit(s)) excluded.insert(t);
        u64 m = 0;
        while (excluded.count(m)) ++m;
        return SolutionCandidate::of_number(m);
    }
    if (q_name == "c_nat_star") {
        const u64 n = inst.header0();
        std::vector<std::set<u64>> excluded(n);
        for (u64 s = 0; s < horizon; ++s)
            for (u64 t : inst.enu.emit(s)) {
                auto [i, m] = unpair_code(t);
                if (i < n) excluded[i].insert(m);
            }
        std::vector<u64> tuple(n, 0);
        for (u64 i = 0; i < n; ++i)
            while (excluded[i].count(tuple[i])) ++tuple[i];
        return SolutionCandidate::of_tuple(tuple);
    }
    if (q_name == "id")
        return SolutionCandidate::of_stream(fiber_stream(inst.fn, 1));
    return std::nullopt;
}

inline Adversary make_honest_adversary(const std::string& p_name,
                                       const std::string& q_name,
                                       SampleParams params = {}) {
    Adversary a;
    a.name = "honest(" + p_name + ")";
    a.open = [p_name, params](u64 seed, const GameConfig&) -> std::optional<Instance> {
        return problem(p_name).sample(seed, params);
    };
    a.respond = [q_name](const Instance& inst, u64,
                         const GameConfig& cfg) -> std::optional<SolutionCandidate> {
        return honest_answer(q_name, inst, cfg);
    };
    return a;
}

// ---------------------------------------------------------------------------
// scripted adversary
// ---------------------------------------------------------------------------

inline Adversary make_scripted_adversary(std::optional<Instance> opening,
                                         std::vector<SolutionCandidate> responses,
                                         std::string name = "scripted") {
    Adversary a;
    a.name = std::move(name);
    auto open_shared = std::make_shared<std::optional<Instance>>(std::move(opening));
    auto resp = std::make_shared<std::vector<SolutionCandidate>>(std::move(responses));
    a.open = [open_shared](u64, const GameConfig&) { return *open_shared; };
    a.respond = [resp](const Instance&, u64 idx,
                       const GameConfig&) -> std::optional<SolutionCandidate> {
        if (idx == 0 || idx > resp->size()) return std::nullopt;
        return (*resp)[idx - 1];
    };
    return a;
}

// ---------------------------------------------------------------------------
// diagonalizer: colorings against closed choice
//
// P = rt1_2, Q = c_nat. Builds the opening 2-coloring while simulating the
// strategy: answers each closed-choice question with the least number not yet
// excluded (restarting the simulation when a guess is invalidated at a wider
// observation window, without revoking committed colors), and on a victory
// claim flips the paint so the claimed stream cannot stay homogeneous.
// ---------------------------------------------------------------------------

struct DiagonalReport {
    Transcript transcript;
    bool monotone_ok = true;  // committed colors never revoked
    u64 phases = 0;           // simulation restarts + 1
    bool inconclusive = false;
    std::vector<u64> poison;  // numbers excluded on purpose (choice-side run)
};

inline DiagonalReport adv_rt12_vs_cn(const Strategy& strat, const GameConfig& cfg) {
    DiagonalReport report;

    auto col = std::make_shared<std::map<u64, u64>>();
    auto paint = std::make_shared<u64>(0);
    auto monotone_ok = std::make_shared<bool>(true);
    auto commit = [col, paint, monotone_ok](u64 x) -> u64 {
        auto it = col->find(x);
        if (it != col->end()) return it->second;
        auto [pos, fresh] = col->emplace(x, *paint);
        if (!fresh) *monotone_ok = false;
        return pos->second;
    };

    Instance x0;
    x0.kind = InstanceKind::TotalColoring;
    x0.header = {2};
    x0.fn = commit;
    x0.generator = "adv_rt12_vs_cn:opening";

    const ProblemSpec& P = problem("rt1_2");
    const ProblemSpec& Q = problem("c_nat");

    Transcript t;
    t.p = P.name;
    t.q = Q.name;
    t.strategy = strat.name;
    t.adversary = "adv_rt12_vs_cn";
    t.config = cfg;

    const u64 max_phases = 64;
    u64 window = cfg.depth + 32;
    const u64 inspect_cap = 8 * cfg.depth;

    for (u64 phase = 0; phase < max_phases; ++phase) {
        report.phases = phase + 1;
        std::vector<MoveRecord> moves;
        {
            MoveRecord rec;
            rec.player = kPlayer1;
            rec.kind = "p1_instance";
            rec.payload = instance_table(x0, cfg.depth);
            rec.digest = table_digest(rec.payload);
            moves.push_back(std::move(rec));
        }

        std::vector<Oracle> history{coded_oracle(x0)};
        std::vector<std::pair<Instance, u64>> answered; // (instance, guess)
        std::optional<Verdict> verdict;

        for (u64 mi = 1; mi <= cfg.max_p2_moves && !verdict; ++mi) {
            auto meter = std::make_shared<FuelMeter>(cfg.fuel_per_move, kPlayer2);
            HistoryView hist(history, meter);
            StrategyContext ctx{hist, mi, cfg.depth};
            P2MoveOut out;
            try {
                out = strat.step(ctx);
            } catch (const OutOfFuel& e) {
                verdict = Verdict{VerdictKind::FuelExhausted, mi,
                                  e.owner < 0 ? kPlayer2 : e.owner, std::nullopt};
                break;
            }

            if (!out.victory) {
                MoveRecord rec;
                rec.player = kPlayer2;
                rec.index = mi;
                rec.kind = "p2_q_instance";
                try {
                    rec.payload = instance_table(out.instance, cfg.depth);
                    rec.digest = table_digest(rec.payload);
                    CheckResult r = Q.validate_instance(out.instance, cfg.depth);
                    rec.check = r.status;
                    moves.push_back(std::move(rec));
                    if (r.refuted()) {
                        verdict = Verdict{VerdictKind::IllegalMove, mi, kPlayer2, r.witness};
                        break;
                    }
                } catch (const OutOfFuel& e) {
                    verdict = Verdict{VerdictKind::FuelExhausted, mi,
                                      e.owner < 0 ? kPlayer2 : e.owner, std::nullopt};
                    break;
                }

                // guess: least number not excluded within the current window
                u64 guess = 0;
                try {
                    std::set<u64> excluded;
                    for (u64 s = 0; s < window; ++s)
                        for (u64 tok : out.instance.enu.emit(s)) excluded.insert(tok);
                    while (excluded.count(guess)) ++guess;
                } catch (const OutOfFuel& e) {
                    verdict = Verdict{VerdictKind::FuelExhausted, mi,
                                      e.owner < 0 ? kPlayer2 : e.owner, std::nullopt};
                    break;
                }
                answered.emplace_back(out.instance, guess);

                SolutionCandidate ans = SolutionCandidate::of_number(guess);
                MoveRecord arec;
                arec.player = kPlayer1;
                arec.kind = "p1_solution";
                arec.payload = solution_table(ans, cfg.depth);
                arec.digest = table_digest(arec.payload);
                moves.push_back(std::move(arec));
                history.push_back(coded_oracle(ans));
                continue;
            }

            // victory claim: inspect the stream, flipping the paint after the
            // first element so a later element must break homogeneity
            MoveRecord rec;
            rec.player = kPlayer2;
            rec.index = mi;
            rec.kind = "p2_victory";
            try {
                if (out.solution.kind != SolutionCandidate::Kind::Stream) {
                    rec.check = CheckResult::Status::Refuted;
                    moves.push_back(std::move(rec));
                    verdict = Verdict{VerdictKind::IllegalMove, mi, kPlayer2,
                                      Witness{"expected a set solution stream", {}}};
                    break;
                }
                const u64 h0 = out.solution.stream(0);
                const u64 v = commit(h0);
                *paint = 1 - v;
                std::optional<Witness> broken;
                for (u64 j = 1; j < inspect_cap && !broken; ++j) {
                    const u64 hj = out.solution.stream(j);
                    if (commit(hj) != v)
                        broken = Witness{"claimed stream not homogeneous", {h0, v, hj}};
                }
                rec.payload = solution_table(out.solution, cfg.depth);
                rec.digest = table_digest(rec.payload);
                rec.check = broken ? CheckResult::Status::Refuted
                                   : CheckResult::Status::Unknown;
                moves.push_back(std::move(rec));
                if (broken)
                    verdict = Verdict{VerdictKind::IllegalMove, mi, kPlayer2, broken};
                else
                    verdict = Verdict{VerdictKind::NonterminatingCutoff, mi, 0,
                                      std::nullopt}; // could not break it within fuel
            } catch (const OutOfFuel& e) {
                verdict = Verdict{VerdictKind::FuelExhausted, mi,
                                  e.owner < 0 ? kPlayer2 : e.owner, std::nullopt};
            }
        }

        if (!verdict)
            verdict = Verdict{VerdictKind::NonterminatingCutoff, cfg.max_p2_moves, 0,
                              std::nullopt};

        // guesses must survive a wider window, or the phase restarts with the
        // committed coloring kept
        bool invalidated = false;
        const u64 wide = window + 64;
        for (auto& [inst, guess] : answered) {
            bool bad = false;
            try {
                for (u64 s = 0; s < wide && !bad; ++s)
                    for (u64 tok : inst.enu.emit(s))
                        if (tok == guess) bad = true;
            } catch (const OutOfFuel&) {
                bad = false; // cannot observe further; keep the guess
            }
            if (bad) invalidated = true;
        }
        if (invalidated && phase + 1 < max_phases) {
            window += 32;
            continue;
        }

        t.moves = std::move(moves);
        t.verdict = *verdict;
        report.inconclusive =
            invalidated || (verdict->kind == VerdictKind::NonterminatingCutoff &&
                            !t.moves.empty() && t.moves.back().kind == "p2_victory");
        break;
    }

    report.monotone_ok = *monotone_ok;
    report.transcript = std::move(t);
    return report;
}

// ---------------------------------------------------------------------------
// diagonalizer: closed choice against finite colorings
//
// P = c_nat, Q = rt1_fin. Explores the strategy's finitely branching
// simulation tree (every color fiber is a possible homogeneous answer),
// enumerates each claimed solution into the complement enumeration E at a
// stage just past everything the strategy has observed, and finally realizes
// one run with tail-majority answers whose victory claim is poisoned.
// ---------------------------------------------------------------------------

inline DiagonalReport adv_cn_vs_rt1inf(const Strategy& strat, u64 n,
                                       const GameConfig& cfg) {
    DiagonalReport report;

    struct EState {
        std::map<u64, std::vector<u64>> scheduled; // stage -> tokens
        std::set<u64> poisoned;
        u64 observed = 0; // highest stage any simulation has read
    };
    auto E = std::make_shared<EState>();

    Instance x0;
    x0.kind = InstanceKind::PlainEnumeration;
    x0.generator = "adv_cn_vs_rt1inf:opening";
    x0.enu = Enumeration{[E](u64 s) -> std::vector<u64> {
        E->observed = std::max(E->observed, s);
        auto it = E->scheduled.find(s);
        return it == E->scheduled.end() ? std::vector<u64>{} : it->second;
    }};

    auto poison = [E, &cfg](u64 m) {
        if (E->poisoned.count(m)) return;
        const u64 stage = std::min(E->observed + 1, cfg.depth - 1);
        E->scheduled[stage].push_back(m);
        E->poisoned.insert(m);
    };

    const ProblemSpec& P = problem("c_nat");
    const ProblemSpec& Q = problem("rt1_fin");
    const u64 max_k = 8;
    const u64 wlo = 4 * cfg.depth, whi = 8 * cfg.depth;

    // branch exploration: every fiber of every played coloring is a possible
    // Player 1 answer; claimed numbers get poisoned
    std::function<void(std::vector<Oracle>&, u64)> explore =
        [&](std::vector<Oracle>& history, u64 moves_left) {
            if (moves_left == 0) return;
            auto meter = std::make_shared<FuelMeter>(cfg.fuel_per_move, kPlayer2);
            HistoryView hist(history, meter);
            StrategyContext ctx{hist, static_cast<u64>(history.size()), cfg.depth};
            P2MoveOut out;
            try {
                out = strat.step(ctx);
            } catch (const OutOfFuel&) {
                return;
            }
            if (out.victory) {
                if (out.solution.kind == SolutionCandidate::Kind::Number)
                    poison(out.solution.number);
                return;
            }
            if (out.instance.kind != InstanceKind::TotalColoring &&
                out.instance.kind != InstanceKind::RangeBoundedColoring)
                return;
            u64 k = out.instance.header0();
            if (k == 0 || out.instance.kind == InstanceKind::RangeBoundedColoring)
                k = max_k;
            k = std::min(k, max_k);
            for (u64 color = 0; color < k; ++color) {
                auto fiber = fiber_stream(out.instance.fn, color, 1 << 12);
                SolutionCandidate ans = SolutionCandidate::of_stream(fiber);
                // skip colors whose fiber dies quickly
                try {
                    (void)fiber(cfg.depth);
                } catch (const std::logic_error&) {
                    continue;
                } catch (const OutOfFuel&) {
                    continue;
                }
                history.push_back(coded_oracle(ans));
                explore(history, moves_left - 1);
                history.pop_back();
            }
        };

    const u64 rounds = 4; // poisoning changes E, so iterate to a fixpoint
    for (u64 r = 0; r < rounds; ++r) {
        const u64 before = E->poisoned.size();
        std::vector<Oracle> history{coded_oracle(x0)};
        explore(history, n + 1);
        if (E->poisoned.size() == before) break;
    }

    report.poison.assign(E->poisoned.begin(), E->poisoned.end());

    // realized run with tail-majority answers
    Adversary realized;
    realized.name = "adv_cn_vs_rt1inf";
    auto opening = std::make_shared<Instance>(x0);
    realized.open = [opening](u64, const GameConfig&) -> std::optional<Instance> {
        return *opening;
    };
    realized.respond = [wlo, whi](const Instance& inst, u64, const GameConfig&)
        -> std::optional<SolutionCandidate> {
        const u64 v = detail::majority_value(inst.fn, wlo, whi);
        return SolutionCandidate::of_stream(fiber_stream(inst.fn, v));
    };

    report.transcript = play_game(P, Q, strat, realized, cfg);
    report.inconclusive = !report.transcript.verdict.p1_favorable();
    return report;
}

// ---------------------------------------------------------------------------
// use-commitment probe
//
// A single-application candidate translation from pair enumerations to tagged
// families must fix its family-count header after observing only finitely
// much of its input. The probe extracts that use on the silent input, then
// feeds an input that agrees up to the use but opens more rows than the
// committed header admits.
// ---------------------------------------------------------------------------

struct WCandidate {
    std::string name;
    std::function<u64(HistoryView&)> header_of; // family count of the output
};

struct CommitmentReport {
    enum class Outcome { HeaderViolated, SolutionRefuted, Inconclusive, NoCommitment };
    Outcome outcome = Outcome::Inconclusive;
    bool committed = false;
    u64 committed_k = 0;
    u64 use = 0;       // highest joined-oracle position the header read
    u64 delay_stage = 0;
    u64 rows = 0;
    bool agreement_ok = false; // delayed input matches the silent one through the use
};

inline CommitmentReport probe_use_commitment(const WCandidate& cand, u64 rows_override,
                                             u64 fuel) {
    CommitmentReport rep;

    Instance silent;
    silent.kind = InstanceKind::PairEnumeration;
    silent.enu = Enumeration::silent();
    silent.generator = "probe:silent";

    u64 k = 0, use = 0;
    {
        std::vector<Oracle> items{coded_oracle(silent)};
        auto meter = std::make_shared<FuelMeter>(fuel);
        HistoryView hist(items, meter);
        try {
            k = cand.header_of(hist);
        } catch (const OutOfFuel&) {
            rep.outcome = CommitmentReport::Outcome::NoCommitment;
            return rep;
        }
        use = hist.use().max_position;
    }
    rep.committed = true;
    rep.committed_k = k;
    rep.use = use;
    rep.rows = rows_override ? rows_override : k + 2;

    // first stage whose coded slot lies entirely beyond the use
    u64 s0 = 0;
    while (pair_code(0, 1 + pair_code(s0, 0)) <= use) ++s0;
    rep.delay_stage = s0;

    const u64 rows = rep.rows;
    Instance delayed;
    delayed.kind = InstanceKind::PairEnumeration;
    delayed.generator = "probe:delayed";
    delayed.enu = Enumeration{[s0, rows, use](u64 s) -> std::vector<u64> {
        if (s < s0 || s >= s0 + rows) return {};
        const u64 row = s - s0;
        return {pair_code(row, use + 1 + row)};
    }};

    // bit-for-bit agreement through the use
    rep.agreement_ok = true;
    {
        Oracle a = coded_oracle(silent);
        Oracle b = coded_oracle(delayed);
        // use is a joined-history position; item 0's local position l sits at
        // joined code pair_code(0, l)
        for (u64 local = 0; pair_code(0, local) <= use; ++local)
            if (a.query(local) != b.query(local)) {
                rep.agreement_ok = false;
                break;
            }
    }

    // the header computation cannot tell the inputs apart
    u64 k2 = 0;
    {
        std::vector<Oracle> items{coded_oracle(delayed)};
        auto meter = std::make_shared<FuelMeter>(fuel);
        HistoryView hist(items, meter);
        try {
            k2 = cand.header_of(hist);
        } catch (const OutOfFuel&) {
            rep.outcome = CommitmentReport::Outcome::Inconclusive;
            return rep;
        }
    }
    if (k2 != k) {
        // continuity says this cannot happen; report it as inconclusive
        rep.outcome = CommitmentReport::Outcome::Inconclusive;
        return rep;
    }
    rep.outcome = rows > k ? CommitmentReport::Outcome::HeaderViolated
                           : CommitmentReport::Outcome::Inconclusive;
    return rep;
}

/// Toy translator: header = number of distinct rows seen in the first 5 stages.
inline WCandidate toy_header_commit() {
    WCandidate c;
    c.name = "toy_header_commit";
    c.header_of = [](HistoryView& hist) -> u64 {
        std::set<u64> rows;
        for (u64 s = 0; s < 5; ++s)
            for (u64 t : hist.batch(0, s)) rows.insert(unpair_code(t).first);
        return rows.size();
    };
    return c;
}

/// Toy translator that copies rows forever and never fixes a header.
inline WCandidate toy_copy_forever() {
    WCandidate c;
    c.name = "toy_copy_forever";
    c.header_of = [](HistoryView& hist) -> u64 {
        std::set<u64> rows;
        for (u64 s = 0;; ++s)
            for (u64 t : hist.batch(0, s)) rows.insert(unpair_code(t).first);
    };
    return c;
}

inline WCandidate wcandidate(const std::string& name) {
    if (name == "toy_header_commit") return toy_header_commit();
    if (name == "toy_copy_forever") return toy_copy_forever();
    throw std::invalid_argument(
        "not a single-application candidate: " + name);
}

} // namespace rg

#endif
