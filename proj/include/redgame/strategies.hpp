#ifndef REDGAME_STRATEGIES_HPP
#define REDGAME_STRATEGIES_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "redgame/engine.hpp"
#include "redgame/problems.hpp"

namespace rg {

// ---------------------------------------------------------------------------
// memoization helpers
//
// Strategy payloads are closures over the move's history view; every oracle
// read costs fuel. These wrappers make repeated evaluation one-pass without
// breaking determinism (cached values never depend on call order).
// ---------------------------------------------------------------------------

inline std::function<u64(u64)> memo_fn(std::function<u64(u64)> f) {
    auto cache = std::make_shared<std::map<u64, u64>>();
    return [cache, f = std::move(f)](u64 x) -> u64 {
        auto it = cache->find(x);
        if (it != cache->end()) return it->second;
        const u64 v = f(x);
        cache->emplace(x, v);
        return v;
    };
}

/// Memoizes a stage-batch computation that must be advanced in order
/// (compute(s) may rely on having processed stages < s already).
inline std::function<std::vector<u64>(u64)> memo_batches(
    std::function<std::vector<u64>(u64)> compute) {
    auto memo = std::make_shared<std::vector<std::vector<u64>>>();
    return [memo, compute = std::move(compute)](u64 s) -> std::vector<u64> {
        while (memo->size() <= s) memo->push_back(compute(memo->size()));
        return (*memo)[s];
    };
}

/// Same for unary values computed stage by stage.
inline std::function<u64(u64)> memo_values(std::function<u64(u64)> compute) {
    auto memo = std::make_shared<std::vector<u64>>();
    return [memo, compute = std::move(compute)](u64 x) -> u64 {
        while (memo->size() <= x) memo->push_back(compute(memo->size()));
        return (*memo)[x];
    };
}

/// The canonical increasing solution of a limit-1 pair coloring:
/// h_0 = 0, h_{n+1} = least y > h_n with c(h_m, y) = 1 for all m <= n.
inline std::function<u64(u64)> lh_recursion_stream(std::function<u64(u64, u64)> c) {
    auto state = std::make_shared<std::vector<u64>>();
    return [state, c = std::move(c)](u64 n) -> u64 {
        while (state->size() <= n) {
            if (state->empty()) {
                state->push_back(0);
                continue;
            }
            u64 y = state->back() + 1;
            for (;; ++y) {
                bool ok = true;
                for (u64 h : *state)
                    if (c(h, y) != 1) {
                        ok = false;
                        break;
                    }
                if (ok) break;
            }
            state->push_back(y);
        }
        return (*state)[n];
    };
}

// ---------------------------------------------------------------------------
// instance translators (shared by several strategies)
// ---------------------------------------------------------------------------

/// Family enumeration (tokens pair(i,k), header = family count) to a total
/// coloring: m gets color i at the first stage witnessing some element > m
/// in F_i; ties broken by earliest stage, then least i.
inline std::function<u64(u64)> family_to_coloring_fn(const HistoryView& hist,
                                                     u64 item) {
    return memo_fn([hist, item](u64 m) -> u64 {
        for (u64 s = 0;; ++s) {
            u64 best = 0;
            bool found = false;
            for (u64 t : hist.batch(item, s)) {
                auto [i, v] = unpair_code(t);
                if (v > m && !found) {
                    best = i;
                    found = true;
                }
            }
            if (found) return best;
        }
    });
}

/// Coloring to a family enumeration: stage s puts s into F_{c(s)}.
inline Enumeration coloring_to_family_enum(const HistoryView& hist, u64 item) {
    return Enumeration{memo_batches([hist, item](u64 s) -> std::vector<u64> {
        return {pair_code(hist.at(item, s), s)};
    })};
}

// ---------------------------------------------------------------------------
// individual strategies
// ---------------------------------------------------------------------------

namespace strat {

/// P = id: mirror the opening set back as a victory stream.
inline Strategy echo() {
    Strategy s;
    s.name = "echo";
    s.declared_bound = 0;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_stream(
            fiber_stream([hist](u64 x) { return hist.at(0, x); }, 1));
        return out;
    };
    return s;
}

/// P = lh: win on move 1 with the canonical recursion.
inline Strategy lh_solve() {
    Strategy s;
    s.name = "lh_solve";
    s.declared_bound = 0;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_stream(lh_recursion_stream(
            [hist](u64 x, u64 y) { return hist.pair_at(0, x, y); }));
        return out;
    };
    return s;
}

/// P = c_nat_star, Q = bound_star. Move 1 enumerates s into F_i whenever the
/// least element of A_i (= least number not yet excluded) changes at stage s;
/// given a common bound b, the least element of A_i after stage b is in A_i.
inline Strategy cnstar_via_boundstar() {
    Strategy s;
    s.name = "strat_cnstar_via_boundstar";
    s.declared_bound = 1;
    s.source = "Hirschfeldt-Jockusch";
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        const u64 n = hist.header(0);

        // least non-excluded element of A_i after stages 0..s
        auto leasts_after = [hist, n](u64 through_stage) -> std::vector<u64> {
            std::vector<std::set<u64>> excluded(n);
            for (u64 s2 = 0; s2 <= through_stage; ++s2)
                for (u64 t : hist.batch(0, s2)) {
                    auto [i, m] = unpair_code(t);
                    if (i < n) excluded[i].insert(m);
                }
            std::vector<u64> out(n, 0);
            for (u64 i = 0; i < n; ++i)
                while (excluded[i].count(out[i])) ++out[i];
            return out;
        };

        if (ctx.move_index == 1) {
            struct Tracker {
                std::vector<std::set<u64>> excluded;
                std::vector<u64> least;
            };
            auto tr = std::make_shared<Tracker>();
            tr->excluded.resize(n);
            tr->least.assign(n, 0);
            P2MoveOut out;
            out.instance.kind = InstanceKind::TaggedFamilyEnumeration;
            out.instance.header = {n};
            out.instance.generator = "strat_cnstar_via_boundstar:1";
            out.instance.enu = Enumeration{memo_batches(
                [hist, n, tr](u64 s2) -> std::vector<u64> {
                    for (u64 t : hist.batch(0, s2)) {
                        auto [i, m] = unpair_code(t);
                        if (i < n) tr->excluded[i].insert(m);
                    }
                    std::vector<u64> emitted;
                    for (u64 i = 0; i < n; ++i) {
                        u64 l = tr->least[i];
                        while (tr->excluded[i].count(l)) ++l;
                        if (l != tr->least[i]) {
                            tr->least[i] = l;
                            emitted.push_back(pair_code(i, s2));
                        }
                    }
                    return emitted;
                })};
            return out;
        }

        const u64 b = hist.answer_number(1);
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_tuple(leasts_after(b));
        return out;
    };
    return s;
}

/// P = stbound_star, Q = bound_star. Move 1: the row indices as a Bound
/// instance (one-family Bound* form). Move 2: given bound b on rows, the
/// entries regrouped into b+1 families. Move 3: the second answer wins.
inline Strategy stboundstar_via_boundstar() {
    Strategy s;
    s.name = "strat_stboundstar_via_boundstar";
    s.declared_bound = 2;
    s.source = "Hirschfeldt-Jockusch";
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::TaggedFamilyEnumeration;
            out.instance.header = {1};
            out.instance.generator = "strat_stboundstar_via_boundstar:1";
            out.instance.enu = Enumeration{memo_batches(
                [hist](u64 s2) -> std::vector<u64> {
                    std::vector<u64> rows;
                    for (u64 t : hist.batch(0, s2))
                        rows.push_back(pair_code(0, unpair_code(t).first));
                    return rows;
                })};
            return out;
        }
        if (ctx.move_index == 2) {
            const u64 b = hist.answer_number(1);
            P2MoveOut out;
            out.instance.kind = InstanceKind::TaggedFamilyEnumeration;
            out.instance.header = {b + 1};
            out.instance.generator = "strat_stboundstar_via_boundstar:2";
            out.instance.enu = Enumeration{memo_batches(
                [hist, b](u64 s2) -> std::vector<u64> {
                    std::vector<u64> toks;
                    for (u64 t : hist.batch(0, s2)) {
                        auto [row, v] = unpair_code(t);
                        if (row <= b) toks.push_back(pair_code(row, v));
                    }
                    return toks;
                })};
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(hist.answer_number(2));
        return out;
    };
    return s;
}

/// P = stbound_star, Q = strt1_fin. Move 1: the coloring n -> i_n where i_n
/// is the least row index maximizing the largest entry seen by stage n
/// (unenumerated rows never win; before any entry, i_n = 0). The homogeneous
/// color names the eventually-maximal row; bounding that row's entries (a
/// Bound question, asked in one-row stRT form via the running maximum) bounds
/// everything. Move 3: the answered color of the second coloring is the bound.
inline Strategy stboundstar_via_strt() {
    Strategy s;
    s.name = "strat_stboundstar_via_strt";
    s.declared_bound = 2;
    s.source = "Hirschfeldt-Jockusch";
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;

        // i_n, advanced stage by stage
        auto argmax_coloring = [hist]() {
            struct St {
                std::map<u64, u64> row_max;
                u64 best_row = 0;
                bool any = false;
            };
            auto st = std::make_shared<St>();
            return memo_values([hist, st](u64 n) -> u64 {
                for (u64 t : hist.batch(0, n)) {
                    auto [row, v] = unpair_code(t);
                    auto it = st->row_max.find(row);
                    if (it == st->row_max.end() || v > it->second)
                        st->row_max[row] = v;
                }
                st->any = !st->row_max.empty();
                if (st->any) {
                    u64 best = 0, bestv = 0;
                    bool first = true;
                    for (const auto& [row, v] : st->row_max)
                        if (first || v > bestv) {
                            best = row;
                            bestv = v;
                            first = false;
                        }
                    st->best_row = best;
                }
                return st->any ? st->best_row : 0;
            });
        };

        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::RangeBoundedColoring;
            out.instance.generator = "strat_stboundstar_via_strt:1";
            out.instance.fn = argmax_coloring();
            return out;
        }
        if (ctx.move_index == 2) {
            auto coloring = argmax_coloring();
            const u64 e0 = hist.stream_at(1, 0);
            const u64 row = coloring(e0);
            // running maximum of row entries: a bounded nondecreasing coloring
            // whose homogeneous color is the row's bound
            struct St {
                u64 mx = 0;
            };
            auto st = std::make_shared<St>();
            P2MoveOut out;
            out.instance.kind = InstanceKind::RangeBoundedColoring;
            out.instance.generator = "strat_stboundstar_via_strt:2";
            out.instance.fn = memo_values([hist, row, st](u64 n) -> u64 {
                for (u64 t : hist.batch(0, n)) {
                    auto [r, v] = unpair_code(t);
                    if (r == row && v > st->mx) st->mx = v;
                }
                return st->mx;
            });
            return out;
        }
        const u64 e0 = hist.stream_at(2, 0);
        // recompute the second coloring's value at e0: the stable running max
        u64 mx = 0;
        const u64 row = [&] {
            auto coloring = argmax_coloring();
            return coloring(hist.stream_at(1, 0));
        }();
        for (u64 n = 0; n <= e0; ++n)
            for (u64 t : hist.batch(0, n)) {
                auto [r, v] = unpair_code(t);
                if (r == row && v > mx) mx = v;
            }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(mx);
        return out;
    };
    return s;
}

/// P = srt22, Q = d22, two applications. Move 1 passes the coloring through.
/// Given a limit-homogeneous L = (l_j), move 2 plays the stable coloring
/// e(x, y) = c(l_0, l_{x+1}), whose limit classes answer the limit color of c
/// on L. The second answer pins the color j; a greedy recursion inside L then
/// produces a genuinely homogeneous set for c with color j.
inline Strategy srt22_via_d22() {
    Strategy s;
    s.name = "strat_srt22_via_d22";
    s.declared_bound = 2;
    s.source = "Hirschfeldt-Jockusch";
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        auto c = [hist](u64 x, u64 y) { return hist.pair_at(0, x, y); };

        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::PairColoring;
            out.instance.generator = "strat_srt22_via_d22:1";
            out.instance.fn2 = [c](u64 x, u64 y) { return x < y ? c(x, y) : 0; };
            return out;
        }

        auto l = memo_fn([hist](u64 j) { return hist.stream_at(1, j); });
        auto v = memo_fn([c, l](u64 x) { return c(l(0), l(x + 1)); });

        if (ctx.move_index == 2) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::PairColoring;
            out.instance.generator = "strat_srt22_via_d22:2";
            out.instance.fn2 = [v](u64 x, u64 y) { return x < y ? v(x) : 0; };
            return out;
        }

        auto a = memo_fn([hist](u64 i) { return hist.stream_at(2, i); });
        const u64 j = v(a(0)); // the limit color of c on L
        auto p = memo_fn([l, a](u64 i) { return l(a(i) + 1); });
        // flip when j = 0 so the recursion always chases color 1
        auto d = [c, p, j](u64 x, u64 y) -> u64 {
            return c(p(x), p(y)) == j ? 1 : 0;
        };
        auto h = lh_recursion_stream(d);
        P2MoveOut out;
        out.victory = true;
        out.solution =
            SolutionCandidate::of_stream(memo_fn([p, h](u64 n) { return p(h(n)); }));
        return out;
    };
    return s;
}

namespace detail {

/// Shared color-elimination loop over a derived coloring f (read through the
/// history): each round plays the 2-coloring d_j(x) = [f(H_j(x)) != f(H_j(0))]
/// on the current set H_j; a color-0 answer is an f-homogeneous set, a
/// color-1 answer removes the pivot value from play.
struct ElimView {
    std::function<u64(u64)> f;
    std::function<u64(u64)> current;     // H_{move-1}: current set as a stream
    std::optional<std::function<u64(u64)>> winning; // set when the last answer had color 0
};

inline ElimView elim_advance(const HistoryView& hist, std::function<u64(u64)> f,
                             u64 move_index) {
    ElimView view;
    view.f = memo_fn(std::move(f));
    std::function<u64(u64)> H = [](u64 x) { return x; };
    for (u64 j = 1; j < move_index; ++j) {
        auto A = memo_fn([hist, j](u64 x) { return hist.stream_at(j, x); });
        auto Hprev = H;
        auto Hnext = memo_fn([Hprev, A](u64 x) { return Hprev(A(x)); });
        const u64 pivot = view.f(Hprev(0));
        if (view.f(Hnext(0)) == pivot) {
            view.winning = Hnext; // color 0: f is pivot-valued on Hnext
            view.current = Hnext;
            return view;
        }
        H = Hnext;
    }
    view.current = H;
    return view;
}

inline Instance elim_instance(const ElimView& view, u64 round) {
    Instance inst;
    inst.kind = InstanceKind::TotalColoring;
    inst.header = {2};
    inst.generator = "elim:" + std::to_string(round);
    auto f = view.f;
    auto H = view.current;
    inst.fn = memo_fn([f, H](u64 x) -> u64 { return f(H(x)) != f(H(0)) ? 1 : 0; });
    return inst;
}

} // namespace detail

/// P = strt1_fin, Q = rt1_2, unbounded moves (at most range-size rounds).
/// One valid realization of the cited construction; see the diagram table's
/// reconstruction flag.
inline Strategy strt_via_rt12_elim() {
    Strategy s;
    s.name = "strat_strt_via_rt12_elim";
    s.reconstruction = true;
    s.source = "Hirschfeldt-Jockusch (cited construction)";
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        auto view = detail::elim_advance(
            hist, [hist](u64 x) { return hist.at(0, x); }, ctx.move_index);
        if (view.winning) {
            P2MoveOut out;
            out.victory = true;
            out.solution = SolutionCandidate::of_stream(*view.winning);
            return out;
        }
        P2MoveOut out;
        out.instance = detail::elim_instance(view, ctx.move_index);
        return out;
    };
    return s;
}

/// Least number not yet excluded by a complement enumeration, stage by stage.
inline std::function<u64(u64)> least_candidate_fn(const HistoryView& hist, u64 item) {
    struct St {
        std::set<u64> excluded;
        u64 least = 0;
    };
    auto st = std::make_shared<St>();
    return memo_values([hist, item, st](u64 s) -> u64 {
        for (u64 t : hist.batch(item, s)) st->excluded.insert(t);
        while (st->excluded.count(st->least)) ++st->least;
        return st->least;
    });
}

/// P = c_nat, Q = bound: enumerate the stages where the least unexcluded
/// number changes; a bound on those stages freezes the candidate.
inline Strategy cn_via_bound() {
    Strategy s;
    s.name = "strat_cn_via_bound";
    s.declared_bound = 1;
    s.source = "Pauly-Fouche-Davie";
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        auto m = least_candidate_fn(hist, 0);
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::PlainEnumeration;
            out.instance.generator = "strat_cn_via_bound:1";
            out.instance.enu = Enumeration{memo_batches([m](u64 s2) -> std::vector<u64> {
                if (s2 == 0) return m(0) != 0 ? std::vector<u64>{0} : std::vector<u64>{};
                return m(s2) != m(s2 - 1) ? std::vector<u64>{s2} : std::vector<u64>{};
            })};
            return out;
        }
        const u64 b = hist.answer_number(1);
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(m(b));
        return out;
    };
    return s;
}

/// P = bound, Q = c_nat: co-enumerate the non-bounds (every x below an
/// enumerated token); an unexcluded number is a bound.
inline Strategy bound_via_cn() {
    Strategy s;
    s.name = "strat_bound_via_cn";
    s.declared_bound = 1;
    s.reconstruction = true;
    s.source = "Pauly-Fouche-Davie (cited equivalence)";
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            struct St {
                u64 watermark = 0; // everything below it already excluded
            };
            auto st = std::make_shared<St>();
            P2MoveOut out;
            out.instance.kind = InstanceKind::PlainEnumeration;
            out.instance.generator = "strat_bound_via_cn:1";
            out.instance.enu = Enumeration{memo_batches(
                [hist, st](u64 s2) -> std::vector<u64> {
                    u64 target = st->watermark;
                    for (u64 t : hist.batch(0, s2)) target = std::max(target, t);
                    std::vector<u64> outv;
                    for (u64 x = st->watermark; x < target; ++x) outv.push_back(x);
                    st->watermark = target;
                    return outv;
                })};
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(hist.answer_number(1));
        return out;
    };
    return s;
}

/// P = c_nat, Q = strt1_fin: the least-candidate trajectory is a bounded
/// nondecreasing coloring; its homogeneous color is the true least element.
inline Strategy cn_via_strt() {
    Strategy s;
    s.name = "strat_cn_via_strt";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        auto m = least_candidate_fn(hist, 0);
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::RangeBoundedColoring;
            out.instance.generator = "strat_cn_via_strt:1";
            out.instance.fn = m;
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(m(hist.stream_at(1, 0)));
        return out;
    };
    return s;
}

/// P = bound, Q = strt1_fin: same with the running maximum.
inline Strategy bound_via_strt() {
    Strategy s;
    s.name = "strat_bound_via_strt";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        struct St {
            u64 mx = 0;
        };
        auto st = std::make_shared<St>();
        auto runmax = memo_values([hist, st](u64 s2) -> u64 {
            for (u64 t : hist.batch(0, s2)) st->mx = std::max(st->mx, t);
            return st->mx;
        });
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::RangeBoundedColoring;
            out.instance.generator = "strat_bound_via_strt:1";
            out.instance.fn = runmax;
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(runmax(hist.stream_at(1, 0)));
        return out;
    };
    return s;
}

/// P = c_nat, Q = rt1_2: least-candidate coloring eliminated through binary
/// colorings; the surviving pivot value is the least element.
inline Strategy cn_via_rt12() {
    Strategy s;
    s.name = "strat_cn_via_rt12";
    s.reconstruction = true;
    s.source = "Hirschfeldt-Jockusch (composed constructions)";
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        auto view = detail::elim_advance(hist, least_candidate_fn(hist, 0),
                                         ctx.move_index);
        if (view.winning) {
            P2MoveOut out;
            out.victory = true;
            out.solution = SolutionCandidate::of_number(view.f((*view.winning)(0)));
            return out;
        }
        P2MoveOut out;
        out.instance = detail::elim_instance(view, ctx.move_index);
        return out;
    };
    return s;
}

/// Pass-through reductions between coloring problems: replay the opening
/// coloring (optionally re-headered) and echo the homogeneous answer.
inline Strategy coloring_pass(std::string name, bool range_bounded_out,
                              std::optional<u64> out_colors,
                              bool copy_source_header) {
    Strategy s;
    s.name = std::move(name);
    s.declared_bound = 1;
    s.step = [range_bounded_out, out_colors,
              copy_source_header](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = range_bounded_out ? InstanceKind::RangeBoundedColoring
                                                  : InstanceKind::TotalColoring;
            if (!range_bounded_out) {
                u64 k = out_colors ? *out_colors : 2;
                if (copy_source_header) k = std::max(k, hist.header(0));
                out.instance.header = {k};
            }
            out.instance.generator = "coloring_pass:1";
            out.instance.fn = memo_fn([hist](u64 x) { return hist.at(0, x); });
            return out;
        }
        auto hist2 = hist;
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_stream(
            memo_fn([hist2](u64 n) { return hist2.stream_at(1, n); }));
        return out;
    };
    return s;
}

/// P = bound, Q = bound_star (one family); and the reverse projection.
inline Strategy bound_via_boundstar() {
    Strategy s;
    s.name = "strat_bound_via_boundstar";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::TaggedFamilyEnumeration;
            out.instance.header = {1};
            out.instance.generator = "strat_bound_via_boundstar:1";
            out.instance.enu = Enumeration{memo_batches(
                [hist](u64 s2) -> std::vector<u64> {
                    std::vector<u64> toks;
                    for (u64 t : hist.batch(0, s2)) toks.push_back(pair_code(0, t));
                    return toks;
                })};
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(hist.answer_number(1));
        return out;
    };
    return s;
}

inline Strategy boundstar_via_bound() {
    Strategy s;
    s.name = "strat_boundstar_via_bound";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::PlainEnumeration;
            out.instance.generator = "strat_boundstar_via_bound:1";
            out.instance.enu = Enumeration{memo_batches(
                [hist](u64 s2) -> std::vector<u64> {
                    std::vector<u64> toks;
                    for (u64 t : hist.batch(0, s2)) toks.push_back(unpair_code(t).second);
                    return toks;
                })};
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(hist.answer_number(1));
        return out;
    };
    return s;
}

/// P = stbound_star, Q = bound: forget the rows (sound over the standard
/// numbers, where finitely many bounded rows have a global bound).
inline Strategy stboundstar_via_bound() {
    Strategy s;
    s.name = "strat_stboundstar_via_bound";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::PlainEnumeration;
            out.instance.generator = "strat_stboundstar_via_bound:1";
            out.instance.enu = Enumeration{memo_batches(
                [hist](u64 s2) -> std::vector<u64> {
                    std::vector<u64> toks;
                    for (u64 t : hist.batch(0, s2)) toks.push_back(unpair_code(t).second);
                    return toks;
                })};
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(hist.answer_number(1));
        return out;
    };
    return s;
}

/// P = bound, Q = stbound_star: plant everything in row 0.
inline Strategy bound_via_stboundstar() {
    Strategy s;
    s.name = "strat_bound_via_stboundstar";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::PairEnumeration;
            out.instance.generator = "strat_bound_via_stboundstar:1";
            out.instance.enu = Enumeration{memo_batches(
                [hist](u64 s2) -> std::vector<u64> {
                    std::vector<u64> toks;
                    for (u64 t : hist.batch(0, s2)) toks.push_back(pair_code(0, t));
                    return toks;
                })};
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(hist.answer_number(1));
        return out;
    };
    return s;
}

/// P = bound_star, Q = stbound_star: families become rows verbatim.
inline Strategy boundstar_via_stboundstar() {
    Strategy s;
    s.name = "strat_boundstar_via_stboundstar";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::PairEnumeration;
            out.instance.generator = "strat_boundstar_via_stboundstar:1";
            out.instance.enu = Enumeration{memo_batches(
                [hist](u64 s2) -> std::vector<u64> { return hist.batch(0, s2); })};
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(hist.answer_number(1));
        return out;
    };
    return s;
}

/// P = c_nat, Q = c_nat_star (one family).
inline Strategy cn_via_cnstar() {
    Strategy s;
    s.name = "strat_cn_via_cnstar";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::TaggedFamilyEnumeration;
            out.instance.header = {1};
            out.instance.generator = "strat_cn_via_cnstar:1";
            out.instance.enu = Enumeration{memo_batches(
                [hist](u64 s2) -> std::vector<u64> {
                    std::vector<u64> toks;
                    for (u64 t : hist.batch(0, s2)) toks.push_back(pair_code(0, t));
                    return toks;
                })};
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(hist.at(1, 0)); // tuple slot 0
        return out;
    };
    return s;
}

/// P = bound_star, Q = c_nat_star: co-enumerate non-bounds per family.
inline Strategy boundstar_via_cnstar() {
    Strategy s;
    s.name = "strat_boundstar_via_cnstar";
    s.declared_bound = 1;
    s.source = "Hirschfeldt-Jockusch";
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        const u64 n = hist.header(0);
        if (ctx.move_index == 1) {
            struct St {
                std::vector<u64> watermark;
            };
            auto st = std::make_shared<St>();
            st->watermark.assign(n, 0);
            P2MoveOut out;
            out.instance.kind = InstanceKind::TaggedFamilyEnumeration;
            out.instance.header = {n};
            out.instance.generator = "strat_boundstar_via_cnstar:1";
            out.instance.enu = Enumeration{memo_batches(
                [hist, n, st](u64 s2) -> std::vector<u64> {
                    std::vector<u64> targets(st->watermark);
                    for (u64 t : hist.batch(0, s2)) {
                        auto [i, v] = unpair_code(t);
                        if (i < n) targets[i] = std::max(targets[i], v);
                    }
                    std::vector<u64> toks;
                    for (u64 i = 0; i < n; ++i) {
                        for (u64 x = st->watermark[i]; x < targets[i]; ++x)
                            toks.push_back(pair_code(i, x));
                        st->watermark[i] = targets[i];
                    }
                    return toks;
                })};
            return out;
        }
        std::vector<u64> tuple;
        for (u64 i = 0; i < n; ++i) tuple.push_back(hist.at(1, i));
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_tuple(std::move(tuple));
        return out;
    };
    return s;
}

/// P = rt1-style or strt, Q = bound_star via family translation: color the
/// numbers by the waiting rule and answer with the witnessed infinite fiber.
inline Strategy rtfin_via_family(std::string name) {
    // the opposite direction of the duality: P = rt1_fin, Q = strt1_fin is
    // covered by coloring_pass; this one turns a family question into colors
    Strategy s;
    s.name = std::move(name);
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            const u64 n = hist.header(0);
            P2MoveOut out;
            out.instance.kind = InstanceKind::TotalColoring;
            out.instance.header = {std::max<u64>(n, 1)};
            out.instance.generator = "rtfin_via_family:1";
            out.instance.fn = family_to_coloring_fn(hist, 0);
            return out;
        }
        // homogeneous color i names an unbounded family
        auto color = family_to_coloring_fn(hist, 0);
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(color(hist.stream_at(1, 0)));
        return out;
    };
    return s;
}

/// Deliberate negative control: claims a 0-move bound but wins on move 3.
inline Strategy fixture_misdeclared() {
    Strategy s = stboundstar_via_boundstar();
    s.name = "fixture_misdeclared_bound";
    s.declared_bound = 0;
    s.source = "";
    return s;
}

// --- forcing fixtures ------------------------------------------------------

/// Emits F_0 = {header of the opening item} on move 1, then claims the
/// canonical recursion as a solution (the opening item of forcing probes is a
/// completed condition, a valid limit-1 coloring).
inline Strategy forcing_echo_header() {
    Strategy s;
    s.name = "forcing_echo_header";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            const u64 h = hist.header(0);
            P2MoveOut out;
            out.instance.kind = InstanceKind::TaggedFamilyEnumeration;
            out.instance.header = {1};
            out.instance.generator = "forcing_echo_header:1";
            out.instance.enu = Enumeration{[h](u64 s2) -> std::vector<u64> {
                if (s2 == 0) return {pair_code(0, h)};
                return {};
            }};
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_stream(lh_recursion_stream(
            [hist](u64 x, u64 y) { return hist.pair_at(0, x, y); }));
        return out;
    };
    return s;
}

inline Strategy forcing_win_now() {
    Strategy s = lh_solve();
    s.name = "forcing_win_now";
    return s;
}

// --- strawmen for the diagonalizers ----------------------------------------

/// P = rt1_2, Q = c_nat. Claims the even numbers immediately.
inline Strategy strawman_claim_evens() {
    Strategy s;
    s.name = "strawman_claim_evens";
    s.declared_bound = 0;
    s.step = [](StrategyContext&) -> P2MoveOut {
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_stream([](u64 n) { return 2 * n; });
        return out;
    };
    return s;
}

/// P = rt1_2, Q = c_nat. Plays the complement-enumeration of nothing, then
/// claims the color-0 fiber of the opponent's coloring.
inline Strategy strawman_cn_then_fiber0() {
    Strategy s;
    s.name = "strawman_cn_then_fiber0";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::PlainEnumeration;
            out.instance.generator = "strawman_cn_then_fiber0:1";
            out.instance.enu = Enumeration::silent();
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_stream(
            fiber_stream([hist](u64 x) { return hist.at(0, x); }, 0));
        return out;
    };
    return s;
}

/// P = rt1_2, Q = c_nat. Declares the set {7}, then claims the fiber of the
/// color at the answered point.
inline Strategy strawman_guess_seven() {
    Strategy s;
    s.name = "strawman_guess_seven";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::PlainEnumeration;
            out.instance.generator = "strawman_guess_seven:1";
            out.instance.enu = Enumeration{[](u64 s2) -> std::vector<u64> {
                // enumerate everything except 7, one number per stage
                const u64 x = s2 < 7 ? s2 : s2 + 1;
                return {x};
            }};
            return out;
        }
        const u64 a = hist.answer_number(1);
        P2MoveOut out;
        out.victory = true;
        const u64 v = hist.at(0, a);
        out.solution = SolutionCandidate::of_stream(
            fiber_stream([hist](u64 x) { return hist.at(0, x); }, v));
        return out;
    };
    return s;
}

/// P = c_nat, Q = rt1_fin. Claims 0 immediately.
inline Strategy strawman_claim_zero() {
    Strategy s;
    s.name = "strawman_claim_zero";
    s.declared_bound = 0;
    s.step = [](StrategyContext&) -> P2MoveOut {
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(0);
        return out;
    };
    return s;
}

/// P = c_nat, Q = rt1_fin. One parity coloring, then claims the least element
/// of the homogeneous answer.
inline Strategy strawman_rt12_then_min() {
    Strategy s;
    s.name = "strawman_rt12_then_min";
    s.declared_bound = 1;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        if (ctx.move_index == 1) {
            P2MoveOut out;
            out.instance.kind = InstanceKind::TotalColoring;
            out.instance.header = {2};
            out.instance.generator = "strawman_rt12_then_min:1";
            out.instance.fn = [](u64 x) { return x % 2; };
            return out;
        }
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(hist.stream_at(1, 0));
        return out;
    };
    return s;
}

/// P = c_nat, Q = rt1_fin. Claims the least number not excluded by stage 5.
inline Strategy strawman_least_by_stage5() {
    Strategy s;
    s.name = "strawman_least_by_stage5";
    s.declared_bound = 0;
    s.step = [](StrategyContext& ctx) -> P2MoveOut {
        auto hist = ctx.hist;
        auto m = least_candidate_fn(hist, 0);
        P2MoveOut out;
        out.victory = true;
        out.solution = SolutionCandidate::of_number(m(5));
        return out;
    };
    return s;
}

} // namespace strat

// ---------------------------------------------------------------------------
// trivially solvable filler instances (for padding)
// ---------------------------------------------------------------------------

inline Instance make_filler(const ProblemSpec& Q) {
    Instance inst;
    inst.generator = "filler(" + Q.name + ")";
    switch (Q.kind) {
    case InstanceKind::TotalColoring:
        inst.kind = InstanceKind::TotalColoring;
        inst.header = {1};
        inst.fn = [](u64) { return 0; };
        break;
    case InstanceKind::RangeBoundedColoring:
        inst.kind = InstanceKind::RangeBoundedColoring;
        inst.fn = [](u64) { return 0; };
        break;
    case InstanceKind::PairColoring:
        inst.kind = InstanceKind::PairColoring;
        inst.fn2 = [](u64, u64) { return 1; };
        break;
    case InstanceKind::PlainEnumeration:
        inst.kind = InstanceKind::PlainEnumeration;
        inst.enu = Enumeration::silent();
        break;
    case InstanceKind::TaggedFamilyEnumeration:
        inst.kind = InstanceKind::TaggedFamilyEnumeration;
        inst.header = {1};
        inst.enu = Enumeration::silent();
        break;
    case InstanceKind::PairEnumeration:
        inst.kind = InstanceKind::PairEnumeration;
        inst.enu = Enumeration::silent();
        break;
    case InstanceKind::ArbitrarySet:
        inst.kind = InstanceKind::ArbitrarySet;
        inst.fn = [](u64) { return 1; };
        break;
    case InstanceKind::StarComposite: {
        const std::string& n = Q.name;
        const ProblemSpec& base = problem(n.substr(5, n.size() - 6));
        inst.kind = InstanceKind::StarComposite;
        inst.header = {1};
        inst.components.push_back(make_filler(base));
        break;
    }
    case InstanceKind::HatInstance:
        inst.kind = InstanceKind::HatInstance;
        inst.hat_empty = true;
        break;
    }
    return inst;
}

/// Delays an inner strategy's victory to exactly `target`+1 Player 2 moves by
/// inserting trivially solvable Q-instances once the inner strategy is ready
/// to win. The inner strategy's own moves are replayed verbatim.
inline Strategy pad_strategy(Strategy inner, u64 target, const ProblemSpec& Q) {
    if (inner.declared_bound && target < *inner.declared_bound)
        throw std::invalid_argument("pad target below inner declared bound");
    Strategy s;
    s.name = "pad(" + inner.name + "," + std::to_string(target) + ")";
    s.declared_bound = target;
    s.reconstruction = inner.reconstruction;
    s.source = inner.source;
    auto filler = std::make_shared<Instance>(make_filler(Q));
    auto in = std::make_shared<Strategy>(std::move(inner));
    s.step = [in, filler, target](StrategyContext& ctx) -> P2MoveOut {
        // rerun the inner strategy's decision sequence from the history;
        // fillers only ever appear after its victory point, so items
        // 0..v-1 are exactly the history it expects
        for (u64 j = 1; j <= ctx.move_index; ++j) {
            StrategyContext sub{ctx.hist, j, ctx.depth};
            P2MoveOut mv = in->step(sub);
            if (mv.victory) {
                if (ctx.move_index <= target) {
                    P2MoveOut fill;
                    fill.instance = *filler;
                    return fill;
                }
                return mv;
            }
            if (j == ctx.move_index) return mv;
        }
        throw std::logic_error("pad_strategy: unreachable");
    };
    return s;
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

inline std::vector<Strategy> all_strategies() {
    using namespace strat;
    return {
        echo(),
        lh_solve(),
        cnstar_via_boundstar(),
        stboundstar_via_boundstar(),
        stboundstar_via_strt(),
        srt22_via_d22(),
        strt_via_rt12_elim(),
        cn_via_bound(),
        bound_via_cn(),
        cn_via_strt(),
        bound_via_strt(),
        cn_via_rt12(),
        coloring_pass("strat_rt1fin_via_strt", true, std::nullopt, false),
        coloring_pass("strat_rt12_via_rt13", false, 3, false),
        coloring_pass("strat_rt12_via_strt", true, std::nullopt, false),
        coloring_pass("strat_rt13_via_rt1fin", false, std::nullopt, true),
        coloring_pass("strat_rt12_via_rt1fin", false, std::nullopt, true),
        bound_via_boundstar(),
        boundstar_via_bound(),
        stboundstar_via_bound(),
        bound_via_stboundstar(),
        boundstar_via_stboundstar(),
        cn_via_cnstar(),
        boundstar_via_cnstar(),
        rtfin_via_family("strat_rt1fin_via_boundstar_family"),
        fixture_misdeclared(),
        forcing_echo_header(),
        forcing_win_now(),
        strawman_claim_evens(),
        strawman_cn_then_fiber0(),
        strawman_guess_seven(),
        strawman_claim_zero(),
        strawman_rt12_then_min(),
        strawman_least_by_stage5(),
    };
}

/// Looks up a strategy by name; understands pad(inner,target). The Q problem
/// name is needed so padding can build filler instances of the right kind.
inline Strategy strategy(const std::string& name, const std::string& q_name = "") {
    if (name.rfind("pad(", 0) == 0 && name.back() == ')') {
        const std::string args = name.substr(4, name.size() - 5);
        const auto comma = args.rfind(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("pad needs (strategy,target)");
        const std::string inner = args.substr(0, comma);
        const u64 target = std::stoull(args.substr(comma + 1));
        if (q_name.empty())
            throw std::invalid_argument("pad needs the Q problem for fillers");
        return pad_strategy(strategy(inner, q_name), target, problem(q_name));
    }
    for (auto& s : all_strategies())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown strategy: " + name);
}

} // namespace rg

#endif
