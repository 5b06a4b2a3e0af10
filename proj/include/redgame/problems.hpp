#ifndef REDGAME_PROBLEMS_HPP
#define REDGAME_PROBLEMS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "redgame/enumeration.hpp"
#include "redgame/oracle.hpp"
#include "redgame/pairing.hpp"

namespace rg {

enum class InstanceKind {
    TotalColoring,           // c : N -> k, color count in header
    RangeBoundedColoring,    // c : N -> N with finite range (promise)
    PairColoring,            // c : [N]^2 -> 2
    PlainEnumeration,        // enumeration of a subset of N
    TaggedFamilyEnumeration, // tokens pair_code(i, k), family count in header
    PairEnumeration,         // tokens pair_code(n, k)
    ArbitrarySet,            // membership function
    StarComposite,           // finite tuple of component instances
    HatInstance,             // empty, or a shift-encoded base instance
};

struct Witness {
    std::string what;
    std::vector<u64> data;
};

struct CheckResult {
    enum class Status { Accepted, Refuted, Unknown } status = Status::Accepted;
    std::optional<Witness> witness;

    static CheckResult ok() { return {Status::Accepted, std::nullopt}; }
    static CheckResult no(Witness w) { return {Status::Refuted, std::move(w)}; }
    static CheckResult maybe() { return {Status::Unknown, std::nullopt}; }

    bool accepted() const { return status == Status::Accepted; }
    bool refuted() const { return status == Status::Refuted; }
};

/// Sampler-attached ground truth. Never consulted by strategies; used by
/// honest adversaries and by audits.
struct Certificate {
    std::function<u64(u64)> limit;            // true limit / tail coloring
    std::optional<u64> delay_bound;           // stabilization offset bound
    std::optional<u64> bound;                 // true inclusive bound
    std::vector<u64> family_bounds;           // per-family inclusive bounds
    std::vector<u64> row_set;                 // rows with at least one entry
    std::vector<u64> members;                 // true solution-set elements
    std::vector<u64> infinite_colors;         // colors with infinite fibers
    std::function<u64(u64)> solution_stream;  // designated set solution
    std::optional<u64> solution_value;        // designated number solution
    std::vector<u64> solution_tuple;          // designated tuple solution
};

struct Instance {
    InstanceKind kind = InstanceKind::TotalColoring;
    std::vector<u64> header;                 // finite, fixed at creation
    std::function<u64(u64)> fn;              // unary content (colorings, sets)
    std::function<u64(u64, u64)> fn2;        // pair-coloring content, x < y
    Enumeration enu;                         // enumeration content
    std::vector<Instance> components;        // StarComposite content
    bool hat_empty = false;                  // HatInstance discriminator
    Certificate cert;
    std::string generator;                   // replay identifier

    u64 header0() const { return header.empty() ? 0 : header[0]; }
};

struct SolutionCandidate {
    enum class Kind { Number, Tuple, Stream, StreamTuple, Empty } kind = Kind::Number;
    u64 number = 0;
    std::vector<u64> tuple;
    std::function<u64(u64)> stream;
    std::vector<std::function<u64(u64)>> streams;

    static SolutionCandidate of_number(u64 n) {
        SolutionCandidate c;
        c.kind = Kind::Number;
        c.number = n;
        return c;
    }
    static SolutionCandidate of_tuple(std::vector<u64> t) {
        SolutionCandidate c;
        c.kind = Kind::Tuple;
        c.tuple = std::move(t);
        return c;
    }
    static SolutionCandidate of_stream(std::function<u64(u64)> s) {
        SolutionCandidate c;
        c.kind = Kind::Stream;
        c.stream = std::move(s);
        return c;
    }
    static SolutionCandidate of_streams(std::vector<std::function<u64(u64)>> ss) {
        SolutionCandidate c;
        c.kind = Kind::StreamTuple;
        c.streams = std::move(ss);
        return c;
    }
    static SolutionCandidate empty() {
        SolutionCandidate c;
        c.kind = Kind::Empty;
        return c;
    }
};

struct SampleParams {
    u64 colors = 2;     // color count for RT1-style problems, <= 16
    u64 families = 2;   // family count for starred problems
    u64 rows = 4;       // row count bound for pair enumerations
    u64 max_entry = 9;  // largest enumerated value
    u64 delay = 8;      // stabilization delay bound, <= 32
    u64 size = 16;      // schedule length / finite-set width
};

struct ProblemSpec {
    std::string name;
    InstanceKind kind = InstanceKind::TotalColoring;
    std::function<CheckResult(const Instance&, u64)> validate_instance;
    std::function<CheckResult(const Instance&, const SolutionCandidate&, u64)> check_solution;
    std::function<Instance(u64, const SampleParams&)> sample;
};

// ---------------------------------------------------------------------------
// canonical coded form
//
// Every history item is exposed to strategies as a single oracle:
//   position 0            header value (0 when the item has none)
//   position 1 + local    content, per kind:
//     colorings / sets      local = x, value c(x)
//     pair colorings        local = pair_code(x,y), value c(x,y) for x<y, else 0
//     enumerations          local = pair_code(stage, j), value token+1 for the
//                           j-th token of that stage's batch, 0 past the batch
//     star composites       local = pair_code(i, p), component i coded at p
//     number answers        header slot carries the number
//     tuple answers         header slot carries the arity, local = i, value a_i
//     stream answers        local = n, value s_n
// ---------------------------------------------------------------------------

inline Oracle coded_oracle(const Instance& inst);

namespace detail {

inline u64 coded_enum_at(const Enumeration& e, u64 local) {
    auto [s, j] = unpair_code(local);
    auto batch = e.emit(s);
    if (j >= batch.size()) return 0;
    return batch[j] + 1;
}

} // namespace detail

inline Oracle coded_oracle(const Instance& inst) {
    auto self = std::make_shared<Instance>(inst);
    switch (inst.kind) {
    case InstanceKind::TotalColoring:
    case InstanceKind::RangeBoundedColoring:
    case InstanceKind::ArbitrarySet:
        return make_oracle([self](u64 pos) -> u64 {
            if (pos == 0) return self->header0();
            return self->fn(pos - 1);
        });
    case InstanceKind::PairColoring:
        return make_oracle([self](u64 pos) -> u64 {
            if (pos == 0) return self->header0();
            auto [x, y] = unpair_code(pos - 1);
            if (x >= y) return 0;
            return self->fn2(x, y);
        });
    case InstanceKind::PlainEnumeration:
    case InstanceKind::TaggedFamilyEnumeration:
    case InstanceKind::PairEnumeration:
        return make_oracle(
            [self](u64 pos) -> u64 {
                if (pos == 0) return self->header0();
                return detail::coded_enum_at(self->enu, pos - 1);
            },
            OracleKind::EnumerationView);
    case InstanceKind::StarComposite: {
        auto comps = std::make_shared<std::vector<Oracle>>();
        for (const auto& c : inst.components) comps->push_back(coded_oracle(c));
        const u64 count = inst.components.size();
        return make_oracle([comps, count](u64 pos) -> u64 {
            if (pos == 0) return count;
            auto [i, p] = unpair_code(pos - 1);
            if (i >= comps->size()) return 0;
            return (*comps)[i].query(p);
        });
    }
    case InstanceKind::HatInstance: {
        if (inst.hat_empty) return constant_oracle(0);
        Oracle base = coded_oracle(inst.components.at(0));
        return make_oracle([base](u64 pos) -> u64 {
            if (pos == 0) return 1;
            return base.query(pos - 1);
        });
    }
    }
    throw std::logic_error("unreachable instance kind");
}

inline Oracle coded_oracle(const SolutionCandidate& cand) {
    auto self = std::make_shared<SolutionCandidate>(cand);
    return make_oracle([self](u64 pos) -> u64 {
        switch (self->kind) {
        case SolutionCandidate::Kind::Number:
            return pos == 0 ? self->number : 0;
        case SolutionCandidate::Kind::Tuple:
            if (pos == 0) return self->tuple.size();
            return pos - 1 < self->tuple.size() ? self->tuple[pos - 1] : 0;
        case SolutionCandidate::Kind::Stream:
            return pos == 0 ? 0 : self->stream(pos - 1);
        case SolutionCandidate::Kind::StreamTuple: {
            if (pos == 0) return self->streams.size();
            auto [i, n] = unpair_code(pos - 1);
            if (i >= self->streams.size()) return 0;
            return self->streams[i](n);
        }
        case SolutionCandidate::Kind::Empty:
            return 0;
        }
        return 0;
    });
}

// ---------------------------------------------------------------------------
// checker helpers
// ---------------------------------------------------------------------------

namespace detail {

/// First `count` elements of a candidate stream; refutes on a non-increasing
/// step (malformed set presentation).
inline std::optional<std::vector<u64>> increasing_prefix(
    const std::function<u64(u64)>& stream, u64 count, CheckResult* bad) {
    std::vector<u64> out;
    out.reserve(count);
    for (u64 n = 0; n < count; ++n) {
        const u64 v = stream(n);
        if (!out.empty() && v <= out.back()) {
            *bad = CheckResult::no(
                {"solution stream not strictly increasing", {n, out.back(), v}});
            return std::nullopt;
        }
        out.push_back(v);
    }
    return out;
}

inline CheckResult check_homogeneous_coloring(const Instance& inst,
                                              const SolutionCandidate& cand,
                                              u64 depth) {
    if (cand.kind != SolutionCandidate::Kind::Stream)
        return CheckResult::no({"expected a set solution stream", {}});
    CheckResult bad = CheckResult::ok();
    auto prefix = increasing_prefix(cand.stream, depth, &bad);
    if (!prefix) return bad;
    if (prefix->empty()) return CheckResult::ok();
    const u64 color = inst.fn((*prefix)[0]);
    for (u64 n = 1; n < prefix->size(); ++n) {
        const u64 c = inst.fn((*prefix)[n]);
        if (c != color)
            return CheckResult::no(
                {"solution not homogeneous", {(*prefix)[0], color, (*prefix)[n], c}});
    }
    return CheckResult::ok();
}

inline CheckResult check_pair_homogeneous(const Instance& inst,
                                          const SolutionCandidate& cand,
                                          u64 depth,
                                          std::optional<u64> required_color) {
    if (cand.kind != SolutionCandidate::Kind::Stream)
        return CheckResult::no({"expected a set solution stream", {}});
    CheckResult bad = CheckResult::ok();
    auto prefix = increasing_prefix(cand.stream, depth, &bad);
    if (!prefix) return bad;
    if (prefix->size() < 2) return CheckResult::ok();
    const u64 color =
        required_color ? *required_color : inst.fn2((*prefix)[0], (*prefix)[1]);
    for (u64 a = 0; a < prefix->size(); ++a)
        for (u64 b = a + 1; b < prefix->size(); ++b) {
            const u64 c = inst.fn2((*prefix)[a], (*prefix)[b]);
            if (c != color)
                return CheckResult::no({"solution pair not homogeneous",
                                        {(*prefix)[a], (*prefix)[b], c, color}});
        }
    return CheckResult::ok();
}

/// Scans stages 0..depth-1 of an enumeration, calling visit(stage, token).
/// visit returns false to stop early.
inline void scan_stages(const Enumeration& e, u64 depth,
                        const std::function<bool(u64, u64)>& visit) {
    for (u64 s = 0; s < depth; ++s) {
        auto batch = e.emit(s);
        for (u64 t : batch)
            if (!visit(s, t)) return;
    }
}

inline CheckResult validate_binary_pairs(const Instance& inst, u64 depth) {
    for (u64 y = 1; y < depth; ++y)
        for (u64 x = 0; x < y; ++x) {
            const u64 v = inst.fn2(x, y);
            if (v > 1)
                return CheckResult::no({"pair color out of range", {x, y, v}});
        }
    return CheckResult::ok();
}

} // namespace detail

// ---------------------------------------------------------------------------
// pseudorandom pointwise helpers (pure, closure-friendly)
// ---------------------------------------------------------------------------

inline u64 splitmix(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// nth element (0-based) of {x : c(x) == color}. Scans incrementally and
/// memoizes found elements, so repeated and increasing access is one pass.
/// Only safe when the fiber really is infinite; the scan cap turns a broken
/// caller into an exception instead of a hang.
inline std::function<u64(u64)> fiber_stream(std::function<u64(u64)> c, u64 color,
                                            u64 scan_cap = 1 << 20) {
    struct State {
        std::vector<u64> found;
        u64 next_x = 0;
    };
    auto st = std::make_shared<State>();
    return [c = std::move(c), color, scan_cap, st](u64 n) -> u64 {
        while (st->found.size() <= n) {
            if (st->next_x >= scan_cap)
                throw std::logic_error("fiber_stream scan cap exceeded");
            if (c(st->next_x) == color) st->found.push_back(st->next_x);
            ++st->next_x;
        }
        return st->found[n];
    };
}

/// Increasing stream through {x : c(x) == color} with consecutive elements
/// more than `gap` apart (used for homogeneous sets of stable colorings).
inline std::function<u64(u64)> thinned_fiber_stream(std::function<u64(u64)> c,
                                                    u64 color, u64 gap,
                                                    u64 scan_cap = 1 << 20) {
    struct State {
        std::vector<u64> found;
        u64 next_x = 0;
    };
    auto st = std::make_shared<State>();
    return [c = std::move(c), color, gap, scan_cap, st](u64 n) -> u64 {
        while (st->found.size() <= n) {
            if (st->next_x >= scan_cap)
                throw std::logic_error("thinned_fiber_stream scan cap exceeded");
            const u64 x = st->next_x++;
            if (!st->found.empty() && x <= st->found.back() + gap) continue;
            if (c(x) == color) st->found.push_back(x);
        }
        return st->found[n];
    };
}

// ---------------------------------------------------------------------------
// samplers
// ---------------------------------------------------------------------------

namespace detail {

inline Instance sample_rt1(u64 seed, const SampleParams& p, bool with_header) {
    std::mt19937_64 rng(mix_seed(seed, with_header ? 101 : 102));
    const u64 k = std::max<u64>(1, p.colors);
    std::vector<u64> infinite;
    for (u64 i = 0; i < k; ++i)
        if (rng() % 2 == 0) infinite.push_back(i);
    if (infinite.empty()) infinite.push_back(rng() % k);
    std::shuffle(infinite.begin(), infinite.end(), rng);

    const u64 cutoff = 32;
    auto pre = std::make_shared<std::vector<u64>>();
    for (u64 x = 0; x < cutoff; ++x) pre->push_back(rng() % k);
    auto inf = std::make_shared<std::vector<u64>>(infinite);

    Instance inst;
    inst.kind = with_header ? InstanceKind::TotalColoring
                            : InstanceKind::RangeBoundedColoring;
    if (with_header) inst.header = {k};
    inst.fn = [pre, inf, cutoff](u64 x) -> u64 {
        if (x < cutoff) return (*pre)[x];
        return (*inf)[(x - cutoff) % inf->size()];
    };
    inst.cert.infinite_colors = *inf;
    inst.cert.solution_stream = fiber_stream(inst.fn, (*inf)[0]);
    inst.generator = (with_header ? "rt1:" : "strt1:") + std::to_string(seed);
    return inst;
}

inline Instance sample_stable_pairs(u64 seed, const SampleParams& p,
                                    bool limit_all_one) {
    std::mt19937_64 rng(mix_seed(seed, limit_all_one ? 103 : 104));
    const u64 delay_bound = std::max<u64>(1, p.delay);
    const u64 salt = rng();
    const u64 period = 1 + rng() % 6;
    auto pattern = std::make_shared<std::vector<u64>>();
    for (u64 i = 0; i < period; ++i)
        pattern->push_back(limit_all_one ? 1 : rng() % 2);
    if (!limit_all_one && rng() % 2)
        (*pattern)[rng() % period] = 1 - (*pattern)[rng() % period];

    auto limit = [pattern](u64 x) -> u64 { return (*pattern)[x % pattern->size()]; };
    auto delay = [salt, delay_bound](u64 x) -> u64 {
        return splitmix(salt ^ (x * 2 + 1)) % delay_bound;
    };
    auto noise = [salt](u64 x, u64 y) -> u64 {
        return splitmix(salt ^ pair_code(x, y)) % 2;
    };

    Instance inst;
    inst.kind = InstanceKind::PairColoring;
    inst.fn2 = [limit, delay, noise](u64 x, u64 y) -> u64 {
        if (x >= y) return 0;
        return y > x + delay(x) ? limit(x) : noise(x, y);
    };
    inst.cert.limit = limit;
    inst.cert.delay_bound = delay_bound;
    const u64 v = limit_all_one ? 1 : limit(0);
    inst.cert.solution_value = v;
    inst.cert.solution_stream = thinned_fiber_stream(limit, v, delay_bound);
    inst.generator =
        (limit_all_one ? "lh:" : "stable:") + std::to_string(seed);
    return inst;
}

inline Instance sample_bound(u64 seed, const SampleParams& p) {
    std::mt19937_64 rng(mix_seed(seed, 105));
    std::vector<std::vector<u64>> schedule(std::max<u64>(1, p.size));
    u64 mx = 0;
    const u64 count = rng() % (p.size + 1);
    for (u64 i = 0; i < count; ++i) {
        const u64 v = rng() % (p.max_entry + 1);
        schedule[rng() % schedule.size()].push_back(v);
        mx = std::max(mx, v);
    }
    Instance inst;
    inst.kind = InstanceKind::PlainEnumeration;
    inst.enu = Enumeration::from_schedule(schedule);
    inst.cert.bound = mx;
    inst.cert.solution_value = mx;
    inst.generator = "bound:" + std::to_string(seed);
    return inst;
}

inline Instance sample_bound_star(u64 seed, const SampleParams& p) {
    std::mt19937_64 rng(mix_seed(seed, 106));
    const u64 n = std::max<u64>(1, p.families);
    std::vector<std::vector<u64>> schedule(std::max<u64>(1, p.size));
    std::vector<u64> maxima(n, 0);
    for (u64 i = 0; i < n; ++i) {
        const u64 count = rng() % (p.size / 2 + 2);
        for (u64 j = 0; j < count; ++j) {
            const u64 v = rng() % (p.max_entry + 1);
            schedule[rng() % schedule.size()].push_back(pair_code(i, v));
            maxima[i] = std::max(maxima[i], v);
        }
    }
    Instance inst;
    inst.kind = InstanceKind::TaggedFamilyEnumeration;
    inst.header = {n};
    inst.enu = Enumeration::from_schedule(schedule);
    inst.cert.family_bounds = maxima;
    inst.cert.bound = *std::max_element(maxima.begin(), maxima.end());
    inst.cert.solution_value = inst.cert.bound;
    inst.cert.solution_tuple = maxima;
    inst.generator = "bound_star:" + std::to_string(seed);
    return inst;
}

inline Instance sample_stbound_star(u64 seed, const SampleParams& p) {
    std::mt19937_64 rng(mix_seed(seed, 107));
    const u64 rows = 1 + rng() % std::max<u64>(1, p.rows);
    std::vector<std::vector<u64>> schedule(std::max<u64>(1, p.size));
    std::vector<u64> row_set;
    std::vector<u64> maxima;
    u64 mx = 0;
    for (u64 i = 0; i < rows; ++i) {
        const u64 count = rng() % (p.size / 2 + 2);
        u64 row_max = 0;
        bool used = false;
        for (u64 j = 0; j < count; ++j) {
            const u64 v = rng() % (p.max_entry + 1);
            schedule[rng() % schedule.size()].push_back(pair_code(i, v));
            row_max = std::max(row_max, v);
            mx = std::max(mx, v);
            used = true;
        }
        if (used) {
            row_set.push_back(i);
            maxima.push_back(row_max);
        }
    }
    Instance inst;
    inst.kind = InstanceKind::PairEnumeration;
    inst.enu = Enumeration::from_schedule(schedule);
    inst.cert.row_set = row_set;
    inst.cert.family_bounds = maxima;
    inst.cert.bound = mx;
    inst.cert.solution_value = mx;
    inst.generator = "stbound_star:" + std::to_string(seed);
    return inst;
}

/// Complement enumeration of a finite nonempty member set: stage s emits the
/// s-th natural number outside `members`.
inline Enumeration complement_enumeration(std::vector<u64> members) {
    auto m = std::make_shared<std::vector<u64>>(std::move(members));
    std::sort(m->begin(), m->end());
    return Enumeration{[m](u64 s) -> std::vector<u64> {
        u64 x = 0, seen = 0;
        while (true) {
            if (!std::binary_search(m->begin(), m->end(), x)) {
                if (seen == s) return {x};
                ++seen;
            }
            ++x;
        }
    }};
}

inline Instance sample_c_nat(u64 seed, const SampleParams& p) {
    std::mt19937_64 rng(mix_seed(seed, 108));
    std::vector<u64> members;
    const u64 count = 1 + rng() % 4;
    for (u64 i = 0; i < count; ++i) members.push_back(rng() % (p.size * 2));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Instance inst;
    inst.kind = InstanceKind::PlainEnumeration;
    inst.enu = complement_enumeration(members);
    inst.cert.members = members;
    inst.cert.solution_value = members[0];
    inst.generator = "c_nat:" + std::to_string(seed);
    return inst;
}

inline Instance sample_uc_nat(u64 seed, const SampleParams& p) {
    std::mt19937_64 rng(mix_seed(seed, 109));
    const u64 v = rng() % (p.size + 1);
    Instance inst;
    inst.kind = InstanceKind::PlainEnumeration;
    inst.enu = complement_enumeration({v});
    inst.cert.members = {v};
    inst.cert.solution_value = v;
    inst.generator = "uc_nat:" + std::to_string(seed);
    return inst;
}

inline Instance sample_c_nat_star(u64 seed, const SampleParams& p) {
    std::mt19937_64 rng(mix_seed(seed, 110));
    const u64 n = std::max<u64>(1, p.families);
    std::vector<Enumeration> parts;
    std::vector<u64> mins;
    std::vector<u64> all_members;
    for (u64 i = 0; i < n; ++i) {
        std::vector<u64> members;
        const u64 count = 1 + rng() % 3;
        for (u64 j = 0; j < count; ++j) members.push_back(rng() % (p.size * 2));
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        mins.push_back(members[0]);
        for (u64 m : members) all_members.push_back(pair_code(i, m));
        parts.push_back(complement_enumeration(members));
    }
    auto shared = std::make_shared<std::vector<Enumeration>>(std::move(parts));
    Instance inst;
    inst.kind = InstanceKind::TaggedFamilyEnumeration;
    inst.header = {n};
    inst.enu = Enumeration{[shared](u64 s) -> std::vector<u64> {
        std::vector<u64> out;
        for (u64 i = 0; i < shared->size(); ++i)
            for (u64 t : (*shared)[i].emit(s)) out.push_back(pair_code(i, t));
        return out;
    }};
    inst.cert.members = all_members;
    inst.cert.solution_tuple = mins;
    inst.generator = "c_nat_star:" + std::to_string(seed);
    return inst;
}

inline Instance sample_id(u64 seed, const SampleParams& p) {
    std::mt19937_64 rng(mix_seed(seed, 111));
    const u64 period = 2 + rng() % 6;
    const u64 residue = rng() % period;
    const u64 cutoff = 32;
    auto noise = std::make_shared<std::vector<u64>>();
    for (u64 x = 0; x < cutoff; ++x) noise->push_back(rng() % 2);
    (void)p;
    Instance inst;
    inst.kind = InstanceKind::ArbitrarySet;
    inst.fn = [noise, cutoff, period, residue](u64 x) -> u64 {
        if (x < cutoff) return (*noise)[x];
        return x % period == residue ? 1 : 0;
    };
    inst.cert.solution_stream = fiber_stream(inst.fn, 1);
    inst.generator = "id:" + std::to_string(seed);
    return inst;
}

} // namespace detail

// ---------------------------------------------------------------------------
// problem specs
// ---------------------------------------------------------------------------

namespace detail {

inline CheckResult accept_any_instance(const Instance&, u64) {
    return CheckResult::ok();
}

inline ProblemSpec make_rt1(std::string name, std::optional<u64> pinned_k) {
    ProblemSpec spec;
    spec.name = name;
    spec.kind = InstanceKind::TotalColoring;
    spec.validate_instance = [](const Instance& inst, u64 depth) -> CheckResult {
        if (inst.kind != InstanceKind::TotalColoring)
            throw std::invalid_argument("rt1: instance kind mismatch");
        const u64 k = inst.header0();
        if (k == 0) return CheckResult::no({"color count must be positive", {}});
        for (u64 x = 0; x < depth; ++x) {
            const u64 v = inst.fn(x);
            if (v >= k) return CheckResult::no({"color out of range", {x, v, k}});
        }
        return CheckResult::ok();
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) {
        return check_homogeneous_coloring(inst, cand, depth);
    };
    spec.sample = [pinned_k](u64 seed, const SampleParams& p) {
        SampleParams q = p;
        if (pinned_k) q.colors = *pinned_k;
        return sample_rt1(seed, q, true);
    };
    return spec;
}

inline ProblemSpec make_strt1() {
    ProblemSpec spec;
    spec.name = "strt1_fin";
    spec.kind = InstanceKind::RangeBoundedColoring;
    spec.validate_instance = [](const Instance& inst, u64) -> CheckResult {
        if (inst.kind != InstanceKind::RangeBoundedColoring &&
            inst.kind != InstanceKind::TotalColoring)
            throw std::invalid_argument("strt1_fin: instance kind mismatch");
        return CheckResult::ok(); // finite range is a promise, not finitely refutable
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) {
        return check_homogeneous_coloring(inst, cand, depth);
    };
    spec.sample = [](u64 seed, const SampleParams& p) {
        return sample_rt1(seed, p, false);
    };
    return spec;
}

inline ProblemSpec make_srt22() {
    ProblemSpec spec;
    spec.name = "srt22";
    spec.kind = InstanceKind::PairColoring;
    spec.validate_instance = [](const Instance& inst, u64 depth) -> CheckResult {
        if (inst.kind != InstanceKind::PairColoring)
            throw std::invalid_argument("srt22: instance kind mismatch");
        return validate_binary_pairs(inst, depth);
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) {
        return check_pair_homogeneous(inst, cand, depth, std::nullopt);
    };
    spec.sample = [](u64 seed, const SampleParams& p) {
        Instance inst = sample_stable_pairs(seed, p, false);
        // homogeneous (not merely limit-homogeneous) designated solution:
        // consecutive elements further apart than every stabilization delay
        inst.generator = "srt22:" + std::to_string(seed);
        return inst;
    };
    return spec;
}

inline ProblemSpec make_d22() {
    ProblemSpec spec;
    spec.name = "d22";
    spec.kind = InstanceKind::PairColoring;
    spec.validate_instance = [](const Instance& inst, u64 depth) -> CheckResult {
        if (inst.kind != InstanceKind::PairColoring)
            throw std::invalid_argument("d22: instance kind mismatch");
        return validate_binary_pairs(inst, depth);
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) -> CheckResult {
        if (cand.kind != SolutionCandidate::Kind::Stream)
            return CheckResult::no({"expected a set solution stream", {}});
        CheckResult bad = CheckResult::ok();
        auto prefix = increasing_prefix(cand.stream, depth, &bad);
        if (!prefix) return bad;
        if (!inst.cert.limit) return CheckResult::maybe(); // limits not observable
        if (prefix->empty()) return CheckResult::ok();
        const u64 v = inst.cert.limit((*prefix)[0]);
        for (u64 x : *prefix)
            if (inst.cert.limit(x) != v)
                return CheckResult::no({"solution not limit-homogeneous", {x, v}});
        return CheckResult::ok();
    };
    spec.sample = [](u64 seed, const SampleParams& p) {
        Instance inst = sample_stable_pairs(seed, p, false);
        const u64 v = inst.cert.limit(0);
        inst.cert.solution_value = v;
        inst.cert.solution_stream = fiber_stream(inst.cert.limit, v);
        inst.generator = "d22:" + std::to_string(seed);
        return inst;
    };
    return spec;
}

inline ProblemSpec make_lh() {
    ProblemSpec spec;
    spec.name = "lh";
    spec.kind = InstanceKind::PairColoring;
    spec.validate_instance = [](const Instance& inst, u64 depth) -> CheckResult {
        if (inst.kind != InstanceKind::PairColoring)
            throw std::invalid_argument("lh: instance kind mismatch");
        return validate_binary_pairs(inst, depth);
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) {
        return check_pair_homogeneous(inst, cand, depth, 1);
    };
    spec.sample = [](u64 seed, const SampleParams& p) {
        return sample_stable_pairs(seed, p, true);
    };
    return spec;
}

inline ProblemSpec make_bound() {
    ProblemSpec spec;
    spec.name = "bound";
    spec.kind = InstanceKind::PlainEnumeration;
    spec.validate_instance = [](const Instance& inst, u64) -> CheckResult {
        if (inst.kind != InstanceKind::PlainEnumeration)
            throw std::invalid_argument("bound: instance kind mismatch");
        return CheckResult::ok();
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) -> CheckResult {
        if (cand.kind != SolutionCandidate::Kind::Number)
            return CheckResult::no({"expected a number solution", {}});
        CheckResult out = CheckResult::ok();
        scan_stages(inst.enu, depth, [&](u64 s, u64 t) {
            if (t > cand.number) { // bound is inclusive
                out = CheckResult::no({"enumerated element above bound", {s, t}});
                return false;
            }
            return true;
        });
        return out;
    };
    spec.sample = detail::sample_bound;
    return spec;
}

inline ProblemSpec make_c_nat(std::string name, bool unique) {
    ProblemSpec spec;
    spec.name = name;
    spec.kind = InstanceKind::PlainEnumeration;
    spec.validate_instance = [](const Instance& inst, u64) -> CheckResult {
        if (inst.kind != InstanceKind::PlainEnumeration)
            throw std::invalid_argument("c_nat: instance kind mismatch");
        return CheckResult::ok(); // nonemptiness of the complement is a promise
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) -> CheckResult {
        if (cand.kind != SolutionCandidate::Kind::Number)
            return CheckResult::no({"expected a number solution", {}});
        CheckResult out = CheckResult::ok();
        scan_stages(inst.enu, depth, [&](u64 s, u64 t) {
            if (t == cand.number) {
                out = CheckResult::no({"candidate was enumerated as excluded", {s, t}});
                return false;
            }
            return true;
        });
        return out;
    };
    spec.sample = unique ? detail::sample_uc_nat : detail::sample_c_nat;
    return spec;
}

inline ProblemSpec make_bound_star() {
    ProblemSpec spec;
    spec.name = "bound_star";
    spec.kind = InstanceKind::TaggedFamilyEnumeration;
    spec.validate_instance = [](const Instance& inst, u64 depth) -> CheckResult {
        if (inst.kind != InstanceKind::TaggedFamilyEnumeration)
            throw std::invalid_argument("bound_star: instance kind mismatch");
        const u64 n = inst.header0();
        if (n == 0) return CheckResult::no({"family count must be positive", {}});
        CheckResult out = CheckResult::ok();
        scan_stages(inst.enu, depth, [&](u64 s, u64 t) {
            auto [i, v] = unpair_code(t);
            (void)v;
            if (i >= n) {
                out = CheckResult::no({"token tagged with out-of-range family", {s, i, n}});
                return false;
            }
            return true;
        });
        return out;
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) -> CheckResult {
        const u64 n = inst.header0();
        std::function<u64(u64)> bound_of;
        if (cand.kind == SolutionCandidate::Kind::Number)
            bound_of = [&cand](u64) { return cand.number; };
        else if (cand.kind == SolutionCandidate::Kind::Tuple &&
                 cand.tuple.size() == n)
            bound_of = [&cand](u64 i) { return cand.tuple[i]; };
        else
            return CheckResult::no({"expected a common bound or an n-tuple", {n}});
        CheckResult out = CheckResult::ok();
        scan_stages(inst.enu, depth, [&](u64 s, u64 t) {
            auto [i, v] = unpair_code(t);
            if (i < n && v > bound_of(i)) {
                out = CheckResult::no({"family element above bound", {s, i, v}});
                return false;
            }
            return true;
        });
        return out;
    };
    spec.sample = detail::sample_bound_star;
    return spec;
}

inline ProblemSpec make_c_nat_star() {
    ProblemSpec spec;
    spec.name = "c_nat_star";
    spec.kind = InstanceKind::TaggedFamilyEnumeration;
    spec.validate_instance = [](const Instance& inst, u64 depth) -> CheckResult {
        if (inst.kind != InstanceKind::TaggedFamilyEnumeration)
            throw std::invalid_argument("c_nat_star: instance kind mismatch");
        const u64 n = inst.header0();
        if (n == 0) return CheckResult::no({"family count must be positive", {}});
        CheckResult out = CheckResult::ok();
        scan_stages(inst.enu, depth, [&](u64 s, u64 t) {
            auto [i, v] = unpair_code(t);
            (void)v;
            if (i >= n) {
                out = CheckResult::no({"token tagged with out-of-range family", {s, i, n}});
                return false;
            }
            return true;
        });
        return out;
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) -> CheckResult {
        const u64 n = inst.header0();
        if (cand.kind != SolutionCandidate::Kind::Tuple || cand.tuple.size() != n)
            return CheckResult::no({"expected an n-tuple of elements", {n}});
        CheckResult out = CheckResult::ok();
        scan_stages(inst.enu, depth, [&](u64 s, u64 t) {
            auto [i, v] = unpair_code(t);
            if (i < n && v == cand.tuple[i]) {
                out = CheckResult::no(
                    {"component was enumerated as excluded", {s, i, v}});
                return false;
            }
            return true;
        });
        return out;
    };
    spec.sample = detail::sample_c_nat_star;
    return spec;
}

inline ProblemSpec make_stbound_star() {
    ProblemSpec spec;
    spec.name = "stbound_star";
    spec.kind = InstanceKind::PairEnumeration;
    spec.validate_instance = [](const Instance& inst, u64) -> CheckResult {
        if (inst.kind != InstanceKind::PairEnumeration)
            throw std::invalid_argument("stbound_star: instance kind mismatch");
        return CheckResult::ok(); // rowwise boundedness is a promise
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) -> CheckResult {
        if (cand.kind != SolutionCandidate::Kind::Number)
            return CheckResult::no({"expected a number solution", {}});
        CheckResult out = CheckResult::ok();
        scan_stages(inst.enu, depth, [&](u64 s, u64 t) {
            auto [row, v] = unpair_code(t);
            if (v > cand.number) {
                out = CheckResult::no({"entry above bound", {s, row, v}});
                return false;
            }
            return true;
        });
        return out;
    };
    spec.sample = detail::sample_stbound_star;
    return spec;
}

inline ProblemSpec make_id() {
    ProblemSpec spec;
    spec.name = "id";
    spec.kind = InstanceKind::ArbitrarySet;
    spec.validate_instance = [](const Instance& inst, u64) -> CheckResult {
        if (inst.kind != InstanceKind::ArbitrarySet)
            throw std::invalid_argument("id: instance kind mismatch");
        return CheckResult::ok(); // infinitude is a promise
    };
    spec.check_solution = [](const Instance& inst, const SolutionCandidate& cand,
                             u64 depth) -> CheckResult {
        if (cand.kind != SolutionCandidate::Kind::Stream)
            return CheckResult::no({"expected a set solution stream", {}});
        CheckResult bad = CheckResult::ok();
        auto prefix = increasing_prefix(cand.stream, depth, &bad);
        if (!prefix) return bad;
        // the solution must be the instance set itself: compare against the
        // increasing enumeration of membership up to the prefix length
        u64 seen = 0;
        const u64 scan_cap = prefix->empty() ? 0 : prefix->back() + 1;
        for (u64 x = 0; x < scan_cap && seen < prefix->size(); ++x) {
            if (inst.fn(x) == 1) {
                if ((*prefix)[seen] != x)
                    return CheckResult::no({"stream disagrees with the set", {seen, x, (*prefix)[seen]}});
                ++seen;
            }
        }
        if (seen < prefix->size())
            return CheckResult::no(
                {"stream contains a non-member", {seen, (*prefix)[seen]}});
        return CheckResult::ok();
    };
    spec.sample = detail::sample_id;
    return spec;
}

inline ProblemSpec make_star(const ProblemSpec& base);
inline ProblemSpec make_hat(const ProblemSpec& base);

} // namespace detail

const ProblemSpec& problem(const std::string& name);

namespace detail {

inline ProblemSpec make_star(const ProblemSpec& base) {
    ProblemSpec spec;
    spec.name = "star(" + base.name + ")";
    spec.kind = InstanceKind::StarComposite;
    auto inner = std::make_shared<ProblemSpec>(base);
    spec.validate_instance = [inner](const Instance& inst, u64 depth) -> CheckResult {
        if (inst.kind != InstanceKind::StarComposite)
            throw std::invalid_argument("star: instance kind mismatch");
        if (inst.components.empty())
            return CheckResult::no({"star instance needs a component", {}});
        if (inst.header0() != inst.components.size())
            return CheckResult::no({"header disagrees with component count",
                                    {inst.header0(), inst.components.size()}});
        bool unknown = false;
        for (u64 i = 0; i < inst.components.size(); ++i) {
            CheckResult r = inner->validate_instance(inst.components[i], depth);
            if (r.refuted()) {
                r.witness->data.insert(r.witness->data.begin(), i);
                return r;
            }
            if (r.status == CheckResult::Status::Unknown) unknown = true;
        }
        return unknown ? CheckResult::maybe() : CheckResult::ok();
    };
    spec.check_solution = [inner](const Instance& inst,
                                  const SolutionCandidate& cand,
                                  u64 depth) -> CheckResult {
        const u64 n = inst.components.size();
        std::function<SolutionCandidate(u64)> part;
        if (cand.kind == SolutionCandidate::Kind::Tuple && cand.tuple.size() == n)
            part = [&cand](u64 i) { return SolutionCandidate::of_number(cand.tuple[i]); };
        else if (cand.kind == SolutionCandidate::Kind::StreamTuple &&
                 cand.streams.size() == n)
            part = [&cand](u64 i) { return SolutionCandidate::of_stream(cand.streams[i]); };
        else
            return CheckResult::no({"expected an n-tuple of component solutions", {n}});
        bool unknown = false;
        for (u64 i = 0; i < n; ++i) {
            CheckResult r = inner->check_solution(inst.components[i], part(i), depth);
            if (r.refuted()) {
                r.witness->data.insert(r.witness->data.begin(), i);
                return r;
            }
            if (r.status == CheckResult::Status::Unknown) unknown = true;
        }
        return unknown ? CheckResult::maybe() : CheckResult::ok();
    };
    spec.sample = [inner](u64 seed, const SampleParams& p) {
        std::mt19937_64 rng(mix_seed(seed, 112));
        const u64 n = std::max<u64>(1, p.families);
        Instance inst;
        inst.kind = InstanceKind::StarComposite;
        inst.header = {n};
        for (u64 i = 0; i < n; ++i)
            inst.components.push_back(inner->sample(mix_seed(seed, 113 + i), p));
        inst.generator = "star(" + inner->name + "):" + std::to_string(seed);
        return inst;
    };
    return spec;
}

inline ProblemSpec make_hat(const ProblemSpec& base) {
    ProblemSpec spec;
    spec.name = "hat(" + base.name + ")";
    spec.kind = InstanceKind::HatInstance;
    auto inner = std::make_shared<ProblemSpec>(base);
    spec.validate_instance = [inner](const Instance& inst, u64 depth) -> CheckResult {
        if (inst.kind != InstanceKind::HatInstance)
            throw std::invalid_argument("hat: instance kind mismatch");
        if (inst.hat_empty) return CheckResult::ok();
        if (inst.components.empty())
            return CheckResult::no({"encoded hat instance needs a payload", {}});
        return inner->validate_instance(inst.components[0], depth);
    };
    spec.check_solution = [inner](const Instance& inst,
                                  const SolutionCandidate& cand,
                                  u64 depth) -> CheckResult {
        if (inst.hat_empty) {
            if (cand.kind == SolutionCandidate::Kind::Empty) return CheckResult::ok();
            return CheckResult::no({"empty instance admits only the empty solution", {}});
        }
        if (cand.kind == SolutionCandidate::Kind::Empty)
            return CheckResult::no({"encoded instance needs a real solution", {}});
        return inner->check_solution(inst.components[0], cand, depth);
    };
    spec.sample = [inner](u64 seed, const SampleParams& p) {
        Instance inst;
        inst.kind = InstanceKind::HatInstance;
        if (mix_seed(seed, 114) % 4 == 0) {
            inst.hat_empty = true;
        } else {
            inst.components.push_back(inner->sample(mix_seed(seed, 115), p));
        }
        inst.generator = "hat(" + inner->name + "):" + std::to_string(seed);
        return inst;
    };
    return spec;
}

inline std::optional<ProblemSpec> build_problem(const std::string& name) {
    if (name.rfind("star(", 0) == 0 && name.back() == ')')
        return make_star(problem(name.substr(5, name.size() - 6)));
    if (name.rfind("hat(", 0) == 0 && name.back() == ')')
        return make_hat(problem(name.substr(4, name.size() - 5)));
    if (name == "rt1_k") return make_rt1(name, std::nullopt);
    if (name.rfind("rt1_", 0) == 0 && name != "rt1_fin") {
        const std::string tail = name.substr(4);
        if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos)
            return make_rt1(name, std::stoull(tail));
    }
    if (name == "rt1_fin") return make_rt1(name, std::nullopt);
    if (name == "strt1_fin") return make_strt1();
    if (name == "srt22") return make_srt22();
    if (name == "d22") return make_d22();
    if (name == "lh") return make_lh();
    if (name == "bound") return make_bound();
    if (name == "bound_star") return make_bound_star();
    if (name == "stbound_star") return make_stbound_star();
    if (name == "c_nat") return make_c_nat(name, false);
    if (name == "c_nat_star") return make_c_nat_star();
    if (name == "uc_nat") return make_c_nat(name, true);
    if (name == "id") return make_id();
    return std::nullopt;
}

} // namespace detail

inline const ProblemSpec& problem(const std::string& name) {
    static std::map<std::string, ProblemSpec> cache;
    static std::recursive_mutex mu; // star(...)/hat(...) resolve their base recursively
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    auto built = detail::build_problem(name);
    if (!built) throw std::invalid_argument("unknown problem: " + name);
    return cache.emplace(name, std::move(*built)).first->second;
}

inline std::vector<std::string> registered_problems() {
    return {"rt1_2",      "rt1_3",        "rt1_fin",    "strt1_fin", "srt22",
            "d22",        "lh",           "bound",      "bound_star",
            "stbound_star", "c_nat",      "c_nat_star", "uc_nat",    "id"};
}

} // namespace rg

#endif
