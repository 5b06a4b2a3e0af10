#include <catch2/catch_amalgamated.hpp>

#include "redgame/adversaries.hpp"
#include "redgame/engine.hpp"
#include "redgame/strategies.hpp"

using namespace rg;

namespace {

Instance pair_coloring(std::function<u64(u64, u64)> fn2) {
    Instance inst;
    inst.kind = InstanceKind::PairColoring;
    inst.fn2 = std::move(fn2);
    return inst;
}

Instance family_schedule(u64 families, std::vector<std::vector<u64>> sched,
                         InstanceKind kind = InstanceKind::TaggedFamilyEnumeration) {
    Instance inst;
    inst.kind = kind;
    if (kind == InstanceKind::TaggedFamilyEnumeration) inst.header = {families};
    inst.enu = Enumeration::from_schedule(std::move(sched));
    return inst;
}

std::vector<u64> victory_stream_prefix(const Transcript& t, u64 n) {
    REQUIRE(t.verdict.kind == VerdictKind::P2Win);
    const MoveRecord& last = t.moves.back();
    REQUIRE(last.kind == "p2_victory");
    std::vector<u64> out;
    for (const auto& [pos, val] : last.payload)
        if (pos >= 1 && pos <= n) out.push_back(val);
    return out;
}

u64 victory_number(const Transcript& t) {
    REQUIRE(t.verdict.kind == VerdictKind::P2Win);
    for (const auto& [pos, val] : t.moves.back().payload)
        if (pos == 0) return val;
    FAIL("no position 0 in victory payload");
    return 0;
}

Adversary fixture_adversary(Instance opening, const std::string& q_name) {
    Adversary a;
    a.name = "fixture";
    auto inst = std::make_shared<Instance>(std::move(opening));
    a.open = [inst](u64, const GameConfig&) -> std::optional<Instance> {
        return *inst;
    };
    a.respond = [q_name](const Instance& q, u64, const GameConfig& cfg) {
        return honest_answer(q_name, q, cfg);
    };
    return a;
}

} // namespace

TEST_CASE("limit-homogeneity recursion fixtures") {
    auto doubling = lh_recursion_stream([](u64 x, u64 y) { return y >= 2 * x ? 1 : 0; });
    std::vector<u64> prefix;
    for (u64 n = 0; n < 5; ++n) prefix.push_back(doubling(n));
    CHECK(prefix == std::vector<u64>{0, 1, 2, 4, 8});

    auto ones = lh_recursion_stream([](u64, u64) { return u64{1}; });
    for (u64 n = 0; n < 6; ++n) CHECK(ones(n) == n);

    auto skip = lh_recursion_stream(
        [](u64 x, u64 y) { return (x == 0 && y == 1) ? u64{0} : u64{1}; });
    CHECK(skip(0) == 0);
    CHECK(skip(1) == 2);
    CHECK(skip(2) == 3);
}

TEST_CASE("lh victory on fixture colorings through the engine") {
    GameConfig cfg;
    cfg.depth = 8; // the fixture's solution doubles, so deep prefixes explode
    Instance fix = pair_coloring([](u64 x, u64 y) { return y >= 2 * x ? 1 : 0; });
    Adversary adv = make_scripted_adversary(fix, {});
    Transcript t = play_game(problem("lh"), problem("lh"), strategy("lh_solve"), adv, cfg);
    REQUIRE(t.verdict.kind == VerdictKind::P2Win);
    CHECK(t.verdict.p2_moves == 1);
    auto prefix = victory_stream_prefix(t, 5);
    CHECK(prefix == std::vector<u64>{0, 1, 2, 4, 8});
}

TEST_CASE("family to coloring waiting rule") {
    Instance inst = family_schedule(
        2, {{pair_code(1, 3)}, {pair_code(0, 5)}, {pair_code(1, 7)}});
    std::vector<Oracle> items{coded_oracle(inst)};
    auto meter = std::make_shared<FuelMeter>(100000);
    HistoryView hist(items, meter);
    auto c = family_to_coloring_fn(hist, 0);
    std::vector<u64> colors;
    for (u64 m = 0; m < 7; ++m) colors.push_back(c(m));
    CHECK(colors == std::vector<u64>{1, 1, 1, 0, 0, 1, 1});
}

TEST_CASE("least-element tracker hand-runs") {
    GameConfig cfg;
    Strategy s = strategy("strat_cnstar_via_boundstar", "bound_star");

    SECTION("single set, complement {0,1}") {
        Instance inst = family_schedule(1, {{pair_code(0, 0)}, {pair_code(0, 1)}});
        Adversary adv = make_scripted_adversary(
            inst, {SolutionCandidate::of_number(5)});
        Transcript t = play_game(problem("c_nat_star"), problem("bound_star"), s,
                                 adv, cfg);
        REQUIRE(t.verdict.kind == VerdictKind::P2Win);
        CHECK(t.verdict.p2_moves == 2);
        CHECK(victory_stream_prefix(t, 1) == std::vector<u64>{2});
    }

    SECTION("two sets with leasts 3 and 2") {
        Instance inst = family_schedule(
            2, {{pair_code(0, 0), pair_code(1, 0)},
                {pair_code(0, 1), pair_code(1, 1)},
                {pair_code(0, 2)}});
        Adversary adv = make_scripted_adversary(
            inst, {SolutionCandidate::of_number(2)});
        Transcript t = play_game(problem("c_nat_star"), problem("bound_star"), s,
                                 adv, cfg);
        REQUIRE(t.verdict.kind == VerdictKind::P2Win);
        CHECK(victory_stream_prefix(t, 2) == std::vector<u64>{3, 2});
    }

    SECTION("nothing enumerated: leasts are zero") {
        Instance inst = family_schedule(1, {});
        Adversary adv = make_scripted_adversary(
            inst, {SolutionCandidate::of_number(0)});
        Transcript t = play_game(problem("c_nat_star"), problem("bound_star"), s,
                                 adv, cfg);
        REQUIRE(t.verdict.kind == VerdictKind::P2Win);
        CHECK(victory_stream_prefix(t, 1) == std::vector<u64>{0});
    }
}

TEST_CASE("two-application stBound* translation hand-run") {
    GameConfig cfg;
    Instance x = family_schedule(
        0, {{pair_code(0, 3)}, {pair_code(2, 1)}, {pair_code(1, 4)}},
        InstanceKind::PairEnumeration);
    Adversary adv = make_scripted_adversary(
        x, {SolutionCandidate::of_number(2), SolutionCandidate::of_number(4)});
    Transcript t = play_game(problem("stbound_star"), problem("bound_star"),
                             strategy("strat_stboundstar_via_boundstar"), adv, cfg);
    REQUIRE(t.verdict.kind == VerdictKind::P2Win);
    CHECK(t.verdict.p2_moves == 3);
    CHECK(victory_number(t) == 4);
}

TEST_CASE("argmax coloring prefix and tie-break") {
    GameConfig cfg;
    Instance x = family_schedule(0, {{pair_code(1, 9)}, {pair_code(0, 2)}},
                                 InstanceKind::PairEnumeration);
    Adversary adv = fixture_adversary(x, "strt1_fin");
    Transcript t = play_game(problem("stbound_star"), problem("strt1_fin"),
                             strategy("strat_stboundstar_via_strt"), adv, cfg);
    REQUIRE(t.verdict.kind == VerdictKind::P2Win);
    CHECK(t.verdict.p2_moves == 3);
    // move 1 payload: coloring prefix [1,1] (9 > 2, so row 1 keeps winning)
    const MoveRecord& m1 = t.moves.at(1);
    REQUIRE(m1.kind == "p2_q_instance");
    CHECK(m1.payload.at(1) == std::pair<u64, u64>{1, 1});
    CHECK(m1.payload.at(2) == std::pair<u64, u64>{2, 1});
    CHECK(victory_number(t) == 9);
}

TEST_CASE("color elimination fixtures") {
    GameConfig cfg;
    Strategy s = strategy("strat_strt_via_rt12_elim", "rt1_2");

    SECTION("constant coloring wins in two moves") {
        Instance f;
        f.kind = InstanceKind::RangeBoundedColoring;
        f.fn = [](u64) { return u64{5}; };
        Adversary adv = fixture_adversary(f, "rt1_2");
        Transcript t = play_game(problem("strt1_fin"), problem("rt1_2"), s, adv, cfg);
        REQUIRE(t.verdict.kind == VerdictKind::P2Win);
        CHECK(t.verdict.p2_moves == 2);
    }

    SECTION("three-valued coloring wins within four moves") {
        Instance f;
        f.kind = InstanceKind::RangeBoundedColoring;
        f.fn = [](u64 x) { return x % 3; };
        Adversary adv = fixture_adversary(f, "rt1_2");
        Transcript t = play_game(problem("strt1_fin"), problem("rt1_2"), s, adv, cfg);
        REQUIRE(t.verdict.kind == VerdictKind::P2Win);
        CHECK(t.verdict.p2_moves <= 4);
    }
}

TEST_CASE("padding delays the win to the exact target") {
    GameConfig cfg;
    Adversary adv = make_honest_adversary("stbound_star", "bound_star");
    Strategy padded = strategy("pad(strat_stboundstar_via_boundstar,4)", "bound_star");
    for (u64 seed = 1; seed <= 5; ++seed) {
        GameConfig c = cfg;
        c.seed = seed;
        Transcript t = play_game(problem("stbound_star"), problem("bound_star"),
                                 padded, adv, c);
        REQUIRE(t.verdict.kind == VerdictKind::P2Win);
        CHECK(t.verdict.p2_moves == 5);
    }
    CHECK_THROWS_AS(strategy("pad(strat_stboundstar_via_boundstar,1)", "bound_star"),
                    std::invalid_argument);
}

TEST_CASE("stable-coloring pipeline keeps the original coloring homogeneous") {
    GameConfig cfg;
    Adversary adv = make_honest_adversary("srt22", "d22");
    Strategy s = strategy("strat_srt22_via_d22", "d22");
    const ProblemSpec& P = problem("srt22");
    for (u64 seed = 1; seed <= 20; ++seed) {
        GameConfig c = cfg;
        c.seed = seed;
        Instance inst = P.sample(seed, {});
        Transcript t = play_game(P, problem("d22"), s, adv, c);
        INFO("seed " << seed);
        REQUIRE(t.verdict.kind == VerdictKind::P2Win);
        CHECK(t.verdict.p2_moves <= 3);
        auto h = victory_stream_prefix(t, cfg.depth - 1);
        REQUIRE(h.size() >= 8);
        const u64 color = inst.fn2(h[0], h[1]);
        for (std::size_t i = 0; i < h.size(); ++i)
            for (std::size_t j = i + 1; j < h.size(); ++j)
                REQUIRE(inst.fn2(h[i], h[j]) == color);
    }
}
