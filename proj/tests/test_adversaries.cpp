#include <catch2/catch_amalgamated.hpp>

#include "redgame/adversaries.hpp"
#include "redgame/strategies.hpp"

using namespace rg;

TEST_CASE("coloring diagonalizer defeats its strawmen on every seed") {
    GameConfig cfg;
    for (const char* name : {"strawman_claim_evens", "strawman_cn_then_fiber0",
                             "strawman_guess_seven"}) {
        Strategy s = strategy(name, "c_nat");
        for (u64 seed = 1; seed <= 20; ++seed) {
            GameConfig c = cfg;
            c.seed = seed;
            DiagonalReport rep = adv_rt12_vs_cn(s, c);
            INFO(name << " seed " << seed);
            CHECK(rep.transcript.verdict.p1_favorable());
            CHECK(rep.monotone_ok);
            CHECK_FALSE(rep.inconclusive);
        }
    }
}

TEST_CASE("coloring diagonalizer stabilizes on the singleton guess") {
    GameConfig cfg;
    // this strawman's question leaves exactly {7}; the guess k=7 must stick
    // and the game continues past it to a later adjudication
    DiagonalReport rep = adv_rt12_vs_cn(strategy("strawman_guess_seven", "c_nat"), cfg);
    bool answered_seven = false;
    for (const MoveRecord& m : rep.transcript.moves)
        if (m.kind == "p1_solution" && !m.payload.empty() && m.payload[0].second == 7)
            answered_seven = true;
    CHECK(answered_seven);
    CHECK(rep.transcript.verdict.p1_favorable());
}

TEST_CASE("choice diagonalizer defeats its strawmen on every seed") {
    GameConfig cfg;
    for (const char* name : {"strawman_claim_zero", "strawman_rt12_then_min",
                             "strawman_least_by_stage5"}) {
        Strategy s = strategy(name, "rt1_fin");
        for (u64 seed = 1; seed <= 20; ++seed) {
            GameConfig c = cfg;
            c.seed = seed;
            DiagonalReport rep = adv_cn_vs_rt1inf(s, 3, c);
            INFO(name << " seed " << seed);
            CHECK(rep.transcript.verdict.p1_favorable());
            // finite poison set, produced before adjudication
            CHECK(rep.poison.size() <= 64);
            CHECK_FALSE(rep.inconclusive);
        }
    }
}

TEST_CASE("diagonalizer runs are deterministic") {
    GameConfig cfg;
    DiagonalReport a = adv_rt12_vs_cn(strategy("strawman_claim_evens", "c_nat"), cfg);
    DiagonalReport b = adv_rt12_vs_cn(strategy("strawman_claim_evens", "c_nat"), cfg);
    REQUIRE(a.transcript.moves.size() == b.transcript.moves.size());
    for (std::size_t i = 0; i < a.transcript.moves.size(); ++i)
        CHECK(a.transcript.moves[i].digest == b.transcript.moves[i].digest);
    CHECK(a.transcript.verdict.kind == b.transcript.verdict.kind);
}

TEST_CASE("use-commitment probe on the toy translators") {
    WCandidate committing = toy_header_commit();

    CommitmentReport first = probe_use_commitment(committing, 3, 100000);
    CHECK(first.committed);
    CHECK(first.committed_k == 0); // silent input shows no rows
    CHECK(first.use > 0);
    CHECK(first.agreement_ok);
    CHECK(first.outcome == CommitmentReport::Outcome::HeaderViolated);

    // deterministic across replays
    for (int i = 0; i < 20; ++i) {
        CommitmentReport r = probe_use_commitment(committing, 3, 100000);
        CHECK(r.committed_k == first.committed_k);
        CHECK(r.use == first.use);
        CHECK(r.delay_stage == first.delay_stage);
        CHECK(r.outcome == first.outcome);
    }

    // default row count is committed_k + 2
    CommitmentReport def = probe_use_commitment(committing, 0, 100000);
    CHECK(def.rows == first.committed_k + 2);
    CHECK(def.outcome == CommitmentReport::Outcome::HeaderViolated);

    CommitmentReport never = probe_use_commitment(toy_copy_forever(), 0, 100000);
    CHECK_FALSE(never.committed);
    CHECK(never.outcome == CommitmentReport::Outcome::NoCommitment);

    // multi-application strategies are outside the probe's domain
    CHECK_THROWS_AS(wcandidate("strat_stboundstar_via_boundstar"),
                    std::invalid_argument);
}

TEST_CASE("honest adversary answers match certificates") {
    GameConfig cfg;
    for (u64 seed = 1; seed <= 20; ++seed) {
        Instance b = problem("bound").sample(seed, {});
        auto ans = honest_answer("bound", b, cfg);
        REQUIRE(ans);
        REQUIRE(ans->kind == SolutionCandidate::Kind::Number);
        CHECK(ans->number == *b.cert.bound);

        Instance cn = problem("c_nat").sample(seed, {});
        auto cna = honest_answer("c_nat", cn, cfg);
        REQUIRE(cna);
        CHECK_FALSE(problem("c_nat").check_solution(cn, *cna, 64).refuted());
    }
}

TEST_CASE("scripted adversary exhaustion and illegal answers") {
    GameConfig cfg;
    // opening, one deliberately illegal answer to a bound question
    Instance cn = problem("c_nat").sample(3, {});
    Adversary adv = make_scripted_adversary(cn, {SolutionCandidate::of_number(0)});
    // strat_cn_via_bound asks for a bound on its change-stage enumeration;
    // answering 0 understates it whenever a change happens after stage 0
    Transcript t = play_game(problem("c_nat"), problem("bound"),
                             strategy("strat_cn_via_bound"), adv, cfg);
    CHECK((t.verdict.kind == VerdictKind::IllegalMove ||
           t.verdict.kind == VerdictKind::P2Win));
}
