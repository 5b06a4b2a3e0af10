#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "redgame/problems.hpp"

using namespace rg;

namespace {

Instance coloring_instance(u64 k, std::function<u64(u64)> fn) {
    Instance inst;
    inst.kind = InstanceKind::TotalColoring;
    inst.header = {k};
    inst.fn = std::move(fn);
    return inst;
}

Instance enumeration_instance(InstanceKind kind, std::vector<std::vector<u64>> sched,
                              std::vector<u64> header = {}) {
    Instance inst;
    inst.kind = kind;
    inst.header = std::move(header);
    inst.enu = Enumeration::from_schedule(std::move(sched));
    return inst;
}

// complement enumeration of a finite "kept" set: stage s emits the s-th
// number outside it
Instance complement_instance(std::set<u64> kept) {
    Instance inst;
    inst.kind = InstanceKind::PlainEnumeration;
    auto k = std::make_shared<std::set<u64>>(std::move(kept));
    inst.enu = Enumeration{[k](u64 s) -> std::vector<u64> {
        u64 seen = 0;
        for (u64 x = 0;; ++x) {
            if (k->count(x)) continue;
            if (seen == s) return {x};
            ++seen;
        }
    }};
    return inst;
}

} // namespace

TEST_CASE("validator examples") {
    const ProblemSpec& rt = problem("rt1_fin");
    Instance bad = coloring_instance(2, [](u64 x) { return x == 5 ? u64{7} : u64{0}; });
    CheckResult r = rt.validate_instance(bad, 6);
    CHECK(r.refuted());
    REQUIRE(r.witness);
    CHECK(r.witness->data.at(0) == 5);

    const ProblemSpec& lh = problem("lh");
    Instance ones;
    ones.kind = InstanceKind::PairColoring;
    ones.fn2 = [](u64, u64) { return 1; };
    CHECK_FALSE(lh.validate_instance(ones, 10).refuted());

    const ProblemSpec& bound = problem("bound");
    Instance f = enumeration_instance(InstanceKind::PlainEnumeration, {{3}, {1}, {4}});
    CHECK_FALSE(bound.validate_instance(f, 5).refuted());
}

TEST_CASE("solution checker examples") {
    const ProblemSpec& rt2 = problem("rt1_2");
    Instance zeros = coloring_instance(2, [](u64) { return 0; });
    auto evens = SolutionCandidate::of_stream([](u64 n) { return 2 * n; });
    CHECK(rt2.check_solution(zeros, evens, 10).accepted());

    // non-increasing stream is malformed
    auto flat = SolutionCandidate::of_stream([](u64) { return u64{4}; });
    CHECK(rt2.check_solution(zeros, flat, 10).refuted());

    const ProblemSpec& bound = problem("bound");
    Instance f = enumeration_instance(InstanceKind::PlainEnumeration, {{3}, {1}, {4}});
    CHECK(bound.check_solution(f, SolutionCandidate::of_number(3), 5).refuted());
    CHECK_FALSE(bound.check_solution(f, SolutionCandidate::of_number(4), 5).refuted());

    const ProblemSpec& cn = problem("c_nat");
    Instance comp2 = complement_instance({2});
    CHECK_FALSE(cn.check_solution(comp2, SolutionCandidate::of_number(2), 50).refuted());
    CheckResult r = cn.check_solution(comp2, SolutionCandidate::of_number(1), 50);
    CHECK(r.refuted());
    CHECK(r.witness.has_value());
}

TEST_CASE("monotone refutation") {
    const ProblemSpec& bound = problem("bound");
    Instance f = enumeration_instance(InstanceKind::PlainEnumeration, {{3}, {1}, {4}});
    for (u64 d = 5; d <= 40; d += 7)
        CHECK(bound.check_solution(f, SolutionCandidate::of_number(3), d).refuted());
}

TEST_CASE("star and hat operators") {
    const ProblemSpec& star_cn = problem("star(c_nat)");
    Instance inst;
    inst.kind = InstanceKind::StarComposite;
    inst.header = {2};
    inst.components = {complement_instance({2}), complement_instance({5})};
    CHECK_FALSE(star_cn.validate_instance(inst, 16).refuted());
    CHECK_FALSE(
        star_cn.check_solution(inst, SolutionCandidate::of_tuple({2, 5}), 32).refuted());
    CHECK(star_cn.check_solution(inst, SolutionCandidate::of_tuple({2, 4}), 32).refuted());

    const ProblemSpec& hat_b = problem("hat(bound)");
    Instance empty;
    empty.kind = InstanceKind::HatInstance;
    empty.hat_empty = true;
    CHECK(hat_b.check_solution(empty, SolutionCandidate::empty(), 8).accepted());
    CHECK(hat_b.check_solution(empty, SolutionCandidate::of_number(0), 8).refuted());

    Instance enc;
    enc.kind = InstanceKind::HatInstance;
    enc.hat_empty = false;
    enc.components = {
        enumeration_instance(InstanceKind::PlainEnumeration, {{3}, {1}, {4}})};
    CHECK_FALSE(hat_b.check_solution(enc, SolutionCandidate::of_number(4), 8).refuted());
    CHECK(hat_b.check_solution(enc, SolutionCandidate::of_number(2), 8).refuted());
}

namespace {

SolutionCandidate designated_solution(const std::string& name, const Instance& inst) {
    if (name.rfind("star(", 0) == 0) {
        const std::string base = name.substr(5, name.size() - 6);
        std::vector<u64> nums;
        std::vector<std::function<u64(u64)>> streams;
        for (const Instance& c : inst.components) {
            SolutionCandidate s = designated_solution(base, c);
            if (s.kind == SolutionCandidate::Kind::Number)
                nums.push_back(s.number);
            else
                streams.push_back(s.stream);
        }
        if (!nums.empty()) return SolutionCandidate::of_tuple(nums);
        return SolutionCandidate::of_streams(streams);
    }
    if (name.rfind("hat(", 0) == 0) {
        if (inst.hat_empty) return SolutionCandidate::empty();
        return designated_solution(name.substr(4, name.size() - 5),
                                   inst.components.at(0));
    }
    if (!inst.cert.solution_tuple.empty())
        return SolutionCandidate::of_tuple(inst.cert.solution_tuple);
    if (inst.cert.solution_stream)
        return SolutionCandidate::of_stream(inst.cert.solution_stream);
    REQUIRE(inst.cert.solution_value);
    return SolutionCandidate::of_number(*inst.cert.solution_value);
}

} // namespace

TEST_CASE("sampler soundness: designated solutions accepted at depth 32") {
    for (const std::string& name : registered_problems()) {
        const ProblemSpec& P = problem(name);
        for (u64 seed = 1; seed <= 50; ++seed) {
            Instance inst = P.sample(seed, {});
            INFO(name << " seed " << seed);
            CHECK_FALSE(P.validate_instance(inst, 32).refuted());
            SolutionCandidate sol = designated_solution(name, inst);
            CHECK_FALSE(P.check_solution(inst, sol, 32).refuted());
        }
    }
    for (const char* name : {"star(bound)", "star(rt1_2)", "hat(c_nat)"}) {
        const ProblemSpec& P = problem(name);
        for (u64 seed = 1; seed <= 25; ++seed) {
            Instance inst = P.sample(seed, {});
            INFO(name << " seed " << seed);
            CHECK_FALSE(P.validate_instance(inst, 32).refuted());
            SolutionCandidate sol = designated_solution(name, inst);
            CHECK_FALSE(P.check_solution(inst, sol, 32).refuted());
        }
    }
}

TEST_CASE("coloring/family duality against certificates") {
    const ProblemSpec& P = problem("rt1_fin");
    for (u64 seed = 1; seed <= 40; ++seed) {
        Instance inst = P.sample(seed, {});
        const u64 k = inst.header0();
        std::set<u64> inf(inst.cert.infinite_colors.begin(),
                          inst.cert.infinite_colors.end());
        for (u64 i = 0; i < k; ++i) {
            bool beyond = false;
            for (u64 x = 64; x < 128 && !beyond; ++x)
                if (inst.fn(x) == i) beyond = true;
            INFO("seed " << seed << " color " << i);
            CHECK(beyond == (inf.count(i) > 0));
        }
    }
}

TEST_CASE("canonical coded form") {
    Instance c = coloring_instance(3, [](u64 x) { return x % 3; });
    Oracle o = coded_oracle(c);
    CHECK(o.query(0) == 3);       // header
    CHECK(o.query(1 + 4) == 1);   // c(4)

    auto sol = SolutionCandidate::of_tuple({5, 9});
    Oracle so = coded_oracle(sol);
    CHECK(so.query(0) == 2);
    CHECK(so.query(1) == 5);
    CHECK(so.query(2) == 9);
}
