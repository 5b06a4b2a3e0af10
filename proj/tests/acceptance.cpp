// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "redgame/adversaries.hpp"
#include "redgame/diagram.hpp"
#include "redgame/forcing.hpp"
#include "redgame/strategies.hpp"
#include "redgame/transcript_io.hpp"

using namespace rg;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& detail) {
    std::printf("criterion %2d [%s] %s (%s)\n", idx, ok ? "PASS" : "FAIL",
                what.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

std::vector<Transcript> g_matrix; // every acceptance game, for round-trip audit

u64 victory_number(const Transcript& t) {
    for (const auto& [pos, val] : t.moves.back().payload)
        if (pos == 0) return val;
    return 0;
}

std::vector<u64> victory_positions(const Transcript& t) {
    std::vector<u64> out;
    for (const auto& [pos, val] : t.moves.back().payload)
        if (pos >= 1) out.push_back(val);
    return out;
}

// --- criterion 1: two-application bound translation, exact move count -------

void criterion1() {
    SampleParams sp;
    sp.rows = 8;
    sp.max_entry = 64;
    Adversary adv = make_honest_adversary("stbound_star", "bound_star", sp);
    Strategy s = strategy("strat_stboundstar_via_boundstar", "bound_star");
    const auto t0 = std::chrono::steady_clock::now();
    u64 exact = 0, fuel_flagged = 0;
    for (u64 seed = 1; seed <= 100; ++seed) {
        GameConfig c;
        c.seed = seed;
        Transcript t = play_game(problem("stbound_star"), problem("bound_star"), s,
                                 adv, c);
        g_matrix.push_back(t);
        if (t.verdict.kind == VerdictKind::P2Win && t.verdict.p2_moves == 3)
            ++exact;
        else if (t.verdict.kind == VerdictKind::FuelExhausted)
            ++fuel_flagged;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = exact >= 99 && exact + fuel_flagged == 100 && secs < 5.0;
    report(1, "stbound_star via bound_star: exactly 3 moves", ok,
           std::to_string(exact) + "/100 exact, " + std::to_string(fuel_flagged) +
               " fuel-flagged, " + std::to_string(secs) + " s");
}

// --- criterion 2: argmax-coloring translation, bound matches certificate ----

void criterion2() {
    SampleParams sp;
    sp.rows = 8;
    sp.max_entry = 64;
    Adversary adv = make_honest_adversary("stbound_star", "strt1_fin", sp);
    Strategy s = strategy("strat_stboundstar_via_strt", "strt1_fin");
    const ProblemSpec& P = problem("stbound_star");
    u64 good = 0;
    for (u64 seed = 1; seed <= 100; ++seed) {
        GameConfig c;
        c.seed = seed;
        Instance inst = P.sample(seed, sp);
        Transcript t = play_game(P, problem("strt1_fin"), s, adv, c);
        g_matrix.push_back(t);
        if (t.verdict.kind != VerdictKind::P2Win || t.verdict.p2_moves > 3) continue;
        const u64 b = victory_number(t);
        if (b < *inst.cert.bound) continue;
        if (P.check_solution(inst, SolutionCandidate::of_number(b), 32).refuted())
            continue;
        ++good;
    }
    report(2, "stbound_star via strt1_fin: bound within 3 moves", good == 100,
           std::to_string(good) + "/100 accepted vs certificates");
}

// --- criterion 3: least-element tuples in exactly 2 moves -------------------

void criterion3() {
    const ProblemSpec& P = problem("c_nat_star");
    Strategy s = strategy("strat_cnstar_via_boundstar", "bound_star");
    u64 good = 0;
    for (u64 seed = 1; seed <= 100; ++seed) {
        SampleParams sp;
        sp.families = 1 + seed % 4;
        Adversary adv = make_honest_adversary("c_nat_star", "bound_star", sp);
        GameConfig c;
        c.seed = seed;
        Instance inst = P.sample(seed, sp);
        Transcript t = play_game(P, problem("bound_star"), s, adv, c);
        g_matrix.push_back(t);
        if (t.verdict.kind != VerdictKind::P2Win || t.verdict.p2_moves != 2) continue;
        if (victory_positions(t) == inst.cert.solution_tuple) ++good;
    }
    report(3, "c_nat_star via bound_star: exact tuples in 2 moves", good == 100,
           std::to_string(good) + "/100 match ground truth");
}

// --- criterion 4: stable pair colorings, homogeneous output -----------------

void criterion4() {
    const ProblemSpec& P = problem("srt22");
    Strategy s = strategy("strat_srt22_via_d22", "d22");
    Adversary adv = make_honest_adversary("srt22", "d22");
    u64 good = 0, branch0 = 0, branch1 = 0;
    for (u64 seed = 1; seed <= 100; ++seed) {
        GameConfig c;
        c.seed = seed;
        Instance inst = P.sample(seed, {});
        Transcript t = play_game(P, problem("d22"), s, adv, c);
        g_matrix.push_back(t);
        if (t.verdict.kind != VerdictKind::P2Win || t.verdict.p2_moves > 3) continue;
        auto h = victory_positions(t);
        if (h.size() < 8) continue;
        const u64 color = inst.fn2(h[0], h[1]);
        bool homogeneous = true;
        for (std::size_t i = 0; i < h.size() && homogeneous; ++i)
            for (std::size_t j = i + 1; j < h.size(); ++j)
                if (inst.fn2(h[i], h[j]) != color) {
                    homogeneous = false;
                    break;
                }
        if (!homogeneous) continue;
        ++good;
        (color == 0 ? branch0 : branch1) += 1;
    }
    const bool ok = good == 100 && branch0 >= 10 && branch1 >= 10;
    report(4, "srt22 via d22: homogeneous prefixes, both branches", ok,
           std::to_string(good) + "/100, colors 0/1 hit " +
               std::to_string(branch0) + "/" + std::to_string(branch1));
}

// --- criterion 5: limit-homogeneity solved on move 1 ------------------------

void criterion5() {
    Strategy s = strategy("lh_solve", "lh");
    Adversary adv = make_honest_adversary("lh", "lh");
    u64 good = 0;
    for (u64 seed = 1; seed <= 100; ++seed) {
        GameConfig c;
        c.seed = seed;
        Transcript t = play_game(problem("lh"), problem("lh"), s, adv, c);
        g_matrix.push_back(t);
        if (t.verdict.kind == VerdictKind::P2Win && t.verdict.p2_moves == 1) ++good;
    }
    auto fix = lh_recursion_stream([](u64 x, u64 y) { return y >= 2 * x ? 1 : 0; });
    bool prefix_ok = true;
    const u64 expect[] = {0, 1, 2, 4, 8};
    for (u64 n = 0; n < 5; ++n) prefix_ok = prefix_ok && fix(n) == expect[n];
    report(5, "lh solved on move 1; fixture prefix [0,1,2,4,8]",
           good == 100 && prefix_ok, std::to_string(good) + "/100 first-move wins");
}

// --- criterion 6: diagonalizers beat their strawmen --------------------------

void criterion6() {
    u64 wins = 0, runs = 0;
    bool invariants = true;
    for (const char* name : {"strawman_claim_evens", "strawman_cn_then_fiber0",
                             "strawman_guess_seven"}) {
        Strategy s = strategy(name, "c_nat");
        for (u64 seed = 1; seed <= 20; ++seed) {
            GameConfig c;
            c.seed = seed;
            DiagonalReport r = adv_rt12_vs_cn(s, c);
            ++runs;
            if (r.transcript.verdict.p1_favorable()) ++wins;
            invariants = invariants && r.monotone_ok && !r.inconclusive;
        }
    }
    for (const char* name : {"strawman_claim_zero", "strawman_rt12_then_min",
                             "strawman_least_by_stage5"}) {
        Strategy s = strategy(name, "rt1_fin");
        for (u64 seed = 1; seed <= 20; ++seed) {
            GameConfig c;
            c.seed = seed;
            DiagonalReport r = adv_cn_vs_rt1inf(s, 3, c);
            ++runs;
            if (r.transcript.verdict.p1_favorable()) ++wins;
            invariants = invariants && !r.inconclusive && r.poison.size() <= 64;
        }
    }
    report(6, "diagonalizers defeat all strawmen with invariants",
           wins == runs && invariants,
           std::to_string(wins) + "/" + std::to_string(runs) + " defeats");
}

// --- criterion 7: use-commitment probe, deterministic -------------------------

void criterion7() {
    WCandidate cand = toy_header_commit();
    CommitmentReport first = probe_use_commitment(cand, 3, 100000);
    bool ok = first.committed && first.agreement_ok &&
              first.outcome == CommitmentReport::Outcome::HeaderViolated;
    for (int i = 0; i < 20 && ok; ++i) {
        CommitmentReport r = probe_use_commitment(cand, 3, 100000);
        ok = r.committed_k == first.committed_k && r.use == first.use &&
             r.delay_stage == first.delay_stage && r.outcome == first.outcome;
    }
    report(7, "use-commitment probe deterministic over 20 replays", ok,
           "use=" + std::to_string(first.use) + " committed_k=" +
               std::to_string(first.committed_k));
}

// --- criterion 8: forcing tooling ---------------------------------------------

void criterion8() {
    bool order_ok = true;
    auto all = all_conditions(4);
    for (const Condition& p : all) order_ok = order_ok && extends(p, p);
    for (const Condition& p : all)
        for (const Condition& q : all) {
            if (extends(q, p) && extends(p, q) && !(p == q)) order_ok = false;
            if (!extends(q, p)) continue;
            for (const Condition& r : all)
                if (extends(r, q) && !extends(r, p)) order_ok = false;
        }

    Strategy echo = strategy("forcing_echo_header", "bound_star");
    bool echo_ok = true;
    for (const Condition& p : all_conditions(5)) {
        BoundsResult b = strategy_bounds(p, echo, 1);
        echo_ok = echo_ok && b.produced == 1 && b.bounds[0] == p.m && b.use_ok;
    }

    bool density_ok = true;
    Condition empty;
    for (u64 m : {3, 5}) {
        DensityResult hit = density_search(0, m, empty, echo, 6);
        if (!hit.found || !extends(hit.q, empty)) {
            density_ok = false;
            continue;
        }
        BoundsResult b = strategy_bounds(hit.q, echo, 1);
        density_ok = density_ok && b.bounds[0] >= m;
    }

    report(8, "forcing: partial order, b_0 = m echo, density hits re-validate",
           order_ok && echo_ok && density_ok,
           std::string("order ") + (order_ok ? "ok" : "BAD") + ", echo " +
               (echo_ok ? "ok" : "BAD") + ", density " +
               (density_ok ? "ok" : "BAD"));
}

// --- criterion 9: engine/core properties ---------------------------------------

Procedure walk_procedure(u64 seed, u64 steps) {
    return [seed, steps](OracleSession& s, u64 input) -> u64 {
        u64 acc = input;
        for (u64 j = 0; j < steps; ++j) {
            acc = s.query(mix_seed(seed, acc + j) % 997);
            s.tick();
        }
        return acc;
    };
}

void criterion9() {
    u64 bad = 0;

    for (u64 i = 0; i < 1000; ++i) {
        Procedure proc = walk_procedure(i, 3 + i % 5);
        Oracle oracle =
            make_oracle([i](u64 pos) { return mix_seed(i * 31 + 1, pos) % 16; });
        RunOutcome a = run_instrumented(proc, oracle, i % 7, 1000);
        if (!a.halted) {
            ++bad;
            continue;
        }
        std::map<u64, u64> assignment;
        for (auto [pos, val] : a.use.queries) assignment[pos] = val;
        RunOutcome b = replay(proc, assignment, a.use, i % 7, 1000);
        if (!b.halted || b.value != a.value || b.use.queries != a.use.queries) ++bad;
    }

    for (u64 i = 0; i < 500; ++i) {
        Procedure proc = walk_procedure(i + 7, 4);
        Oracle oracle = make_oracle([i](u64 pos) { return mix_seed(i, pos) % 16; });
        RunOutcome full = run_instrumented(proc, oracle, 0, 1000);
        if (!full.halted) {
            ++bad;
            continue;
        }
        for (u64 budget : {full.spent, full.spent + 9, 10 * full.spent}) {
            RunOutcome r = run_instrumented(proc, oracle, 0, budget);
            if (!r.halted || r.value != full.value) ++bad;
        }
        if (full.spent > 0 &&
            run_instrumented(proc, oracle, 0, full.spent - 1).halted)
            ++bad;
    }

    for (u64 i = 0; i < 1000; ++i)
        for (u64 x = 0; x < 1000; ++x) {
            auto [a, b] = unpair_code(pair_code(i, x));
            if (a != i || b != x) ++bad;
        }

    u64 roundtrips = 0;
    for (const Transcript& t : g_matrix) {
        Transcript back = transcript_from_json(to_json(t));
        bool same = back.moves.size() == t.moves.size() &&
                    back.verdict.kind == t.verdict.kind &&
                    back.verdict.p2_moves == t.verdict.p2_moves;
        for (std::size_t i = 0; same && i < t.moves.size(); ++i)
            same = back.moves[i].digest == t.moves[i].digest;
        if (same)
            ++roundtrips;
        else
            ++bad;
    }

    report(9, "core properties and transcript round-trips", bad == 0,
           std::to_string(roundtrips) + " transcripts round-tripped, " +
               std::to_string(bad) + " failures");
}

// --- criterion 10: diagram audit -------------------------------------------------

void criterion10() {
    GameConfig cfg;
    bool all_ok = true;
    bool control_flagged = false;
    u64 meta = 0;
    for (int d = 1; d <= 5; ++d)
        for (const ArrowResult& r : check_diagram(d, 3, cfg)) {
            if (!r.pass) all_ok = false;
            if (r.arrow.status == "metatheoretic") {
                ++meta;
                std::printf("  diagram %d: %s -> %s [%s] cited: %s\n",
                            r.arrow.diagram, r.arrow.q.c_str(), r.arrow.p.c_str(),
                            r.arrow.relation.c_str(), r.arrow.citation.c_str());
            }
            if (r.arrow.status == "negative_control" && r.pass)
                control_flagged = true;
        }
    report(10, "diagrams 1-5 audited, negative control flagged",
           all_ok && control_flagged,
           std::to_string(meta) + " metatheoretic edges listed");
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures > 0) {
        std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
}
