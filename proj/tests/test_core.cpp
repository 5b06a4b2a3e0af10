#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "redgame/oracle.hpp"
#include "redgame/pairing.hpp"

using namespace rg;

TEST_CASE("pair_code frozen values") {
    CHECK(pair_code(0, 0) == 0);
    CHECK(pair_code(1, 2) == 8);
    CHECK(pair_code(2, 1) == 7);
}

TEST_CASE("pair/unpair invert on a grid") {
    for (u64 i = 0; i <= 100; ++i)
        for (u64 x = 0; x <= 100; ++x) {
            auto [a, b] = unpair_code(pair_code(i, x));
            REQUIRE(a == i);
            REQUIRE(b == x);
        }
}

TEST_CASE("join addressing") {
    Oracle x = make_oracle([](u64 n) { return n * n; });
    Oracle x0 = constant_oracle(3);
    Oracle x1 = make_oracle([](u64 n) { return n + 10; });

    CHECK(join({x}).query(pair_code(0, 5)) == 25);
    CHECK(join({x0, x1}).query(pair_code(1, 2)) == 12);
    CHECK(pair_code(1, 2) == 8);
    CHECK(join({x0, x1}).query(pair_code(2, 0)) == 0); // out-of-range row rule
    CHECK(pair_code(2, 0) == 3);
}

static const Procedure kEchoAt = [](OracleSession& s, u64 n) { return s.query(n); };
static const Procedure kMax03 = [](OracleSession& s, u64) {
    u64 m = 0;
    for (u64 i = 0; i < 4; ++i) m = std::max(m, s.query(i));
    return m;
};

TEST_CASE("run_instrumented basics") {
    RunOutcome r = run_instrumented(kEchoAt, constant_oracle(7), 5, 10);
    REQUIRE(r.halted);
    CHECK(r.value == 7);
    REQUIRE(r.use.queries.size() == 1);
    CHECK(r.use.queries[0] == std::pair<u64, u64>{5, 7});

    Oracle sq = make_oracle([](u64 n) { return n * n; });
    RunOutcome m = run_instrumented(kMax03, sq, 0, 100);
    REQUIRE(m.halted);
    CHECK(m.value == 9);
    CHECK(m.use.queries.size() == 4);
    CHECK(m.use.max_position == 3);

    RunOutcome z = run_instrumented(kMax03, sq, 0, 0);
    CHECK_FALSE(z.halted);
    CHECK(z.spent == 0);
}

TEST_CASE("replay honors the use contract") {
    Oracle sq = make_oracle([](u64 n) { return n * n; });
    RunOutcome m = run_instrumented(kMax03, sq, 0, 100);
    REQUIRE(m.halted);

    std::map<u64, u64> assignment;
    for (auto [pos, val] : m.use.queries) assignment[pos] = val;
    RunOutcome r = replay(kMax03, assignment, m.use, 0, 100);
    REQUIRE(r.halted);
    CHECK(r.value == m.value);
    CHECK(r.use.queries == m.use.queries);

    assignment[2] = 99;
    CHECK_THROWS_AS(replay(kMax03, assignment, m.use, 0, 100), ReplayMismatch);

    // replay of an exhausted run is still exhausted
    RunOutcome z = run_instrumented(kMax03, sq, 0, 2);
    REQUIRE_FALSE(z.halted);
    std::map<u64, u64> partial;
    for (auto [pos, val] : z.use.queries) partial[pos] = val;
    CHECK_FALSE(replay(kMax03, partial, z.use, 0, 2).halted);
}

namespace {

// seeded random walk procedure: each query position is derived from the
// previous answer, so the use depends on the oracle
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

Oracle random_oracle(u64 seed) {
    return make_oracle([seed](u64 pos) { return mix_seed(seed, pos) % 16; });
}

} // namespace

TEST_CASE("continuity and determinism on seeded runs") {
    for (u64 i = 0; i < 200; ++i) {
        Procedure proc = walk_procedure(i, 3 + i % 5);
        Oracle oracle = random_oracle(i * 31 + 1);
        RunOutcome a = run_instrumented(proc, oracle, i % 7, 1000);
        RunOutcome b = run_instrumented(proc, oracle, i % 7, 1000);
        REQUIRE(a.halted == b.halted);
        CHECK(a.value == b.value);
        CHECK(a.use.queries == b.use.queries);
        if (!a.halted) continue;
        std::map<u64, u64> assignment;
        for (auto [pos, val] : a.use.queries) assignment[pos] = val;
        RunOutcome c = replay(proc, assignment, a.use, i % 7, 1000);
        REQUIRE(c.halted);
        CHECK(c.value == a.value);
        CHECK(c.use.queries == a.use.queries);
    }
}

TEST_CASE("fuel monotonicity on seeded runs") {
    for (u64 i = 0; i < 100; ++i) {
        Procedure proc = walk_procedure(i + 7, 4);
        Oracle oracle = random_oracle(i);
        RunOutcome full = run_instrumented(proc, oracle, 0, 1000);
        REQUIRE(full.halted);
        const u64 f = full.spent;
        for (u64 budget : {f, f + 1, f + 17, 10 * f}) {
            RunOutcome r = run_instrumented(proc, oracle, 0, budget);
            REQUIRE(r.halted);
            CHECK(r.value == full.value);
        }
        if (f > 0) CHECK_FALSE(run_instrumented(proc, oracle, 0, f - 1).halted);
    }
}

TEST_CASE("fuel meter attribution") {
    FuelMeter meter(3, 2);
    meter.charge(3);
    CHECK(meter.remaining() == 0);
    try {
        meter.charge();
        FAIL("expected OutOfFuel");
    } catch (const OutOfFuel& e) {
        CHECK(e.owner == 2);
        CHECK(e.spent == 3);
    }
}
