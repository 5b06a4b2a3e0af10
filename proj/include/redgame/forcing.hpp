#ifndef REDGAME_FORCING_HPP
#define REDGAME_FORCING_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "redgame/engine.hpp"
#include "redgame/problems.hpp"

namespace rg {

// ---------------------------------------------------------------------------
// forcing conditions
//
// A condition is a finite 2-coloring of the pairs below m. Extension keeps
// the old table and forces every pair crossing the old boundary to 1, so a
// completed condition is always a limit-homogeneous coloring with limit 1.
// ---------------------------------------------------------------------------

struct Condition {
    u64 m = 0;
    std::vector<u64> table; // slot (x,y), x<y<m, at index y(y-1)/2 + x

    static u64 slot(u64 x, u64 y) { return y * (y - 1) / 2 + x; }
    static u64 table_size(u64 m) { return m < 2 ? 0 : m * (m - 1) / 2; }

    u64 at(u64 x, u64 y) const { return table.at(slot(x, y)); }

    static Condition make(u64 m, std::vector<u64> table) {
        if (table.size() != table_size(m))
            throw std::invalid_argument("condition table size mismatch");
        for (u64 v : table)
            if (v > 1) throw std::invalid_argument("condition values must be 0/1");
        return Condition{m, std::move(table)};
    }

    bool operator==(const Condition& o) const { return m == o.m && table == o.table; }
};

/// q extends p: q agrees with p where p is defined and every new pair
/// crossing p's boundary (x < p.m <= y < q.m) has value 1.
inline bool extends(const Condition& q, const Condition& p) {
    if (q.m < p.m) return false;
    for (u64 y = 1; y < p.m; ++y)
        for (u64 x = 0; x < y; ++x)
            if (q.at(x, y) != p.at(x, y)) return false;
    for (u64 y = p.m; y < q.m; ++y)
        for (u64 x = 0; x < p.m && x < y; ++x)
            if (q.at(x, y) != 1) return false;
    return true;
}

/// Total coloring extending p with tail 1, packaged as a limit-homogeneous
/// instance. The header carries p.m so the coded oracle exposes the
/// condition's length at position 0.
inline Instance complete_condition(const Condition& p) {
    Instance inst;
    inst.kind = InstanceKind::PairColoring;
    inst.header = {p.m};
    auto cond = std::make_shared<Condition>(p);
    inst.fn2 = [cond](u64 x, u64 y) -> u64 {
        if (x < y && y < cond->m) return cond->at(x, y);
        return 1;
    };
    inst.generator = "complete_condition";
    return inst;
}

// ---------------------------------------------------------------------------
// strategy bounds
//
// Simulates a strategy (targeting a bounded-enumeration oracle problem)
// against the completion of p. Each emitted enumeration is observed through
// stage p.m only; its least inclusive bound b_i is recorded and fed back as
// the next answer. The sequence is padded with zeros to length n.
// ---------------------------------------------------------------------------

struct BoundsResult {
    std::vector<u64> bounds;        // length n
    std::vector<bool> fuel_flagged; // per entry
    u64 produced = 0;               // entries recorded before victory/fuel
    bool victory = false;
    bool use_ok = true;             // queries stayed inside the played history
};

inline BoundsResult strategy_bounds(const Condition& p, const Strategy& strat,
                                    u64 n, u64 fuel = 100000) {
    BoundsResult res;
    res.bounds.assign(n, 0);
    res.fuel_flagged.assign(n, false);

    std::vector<Oracle> history{coded_oracle(complete_condition(p))};

    for (u64 i = 0; i < n; ++i) {
        auto meter = std::make_shared<FuelMeter>(fuel, kPlayer2);
        HistoryView hist(history, meter);
        StrategyContext ctx{hist, i + 1, 32};
        P2MoveOut out;
        try {
            out = strat.step(ctx);
        } catch (const OutOfFuel&) {
            res.fuel_flagged[i] = true;
            return res;
        }
        if (!hist.use().queries.empty() &&
            unpair_code(hist.use().max_position).first >= history.size())
            res.use_ok = false;
        if (out.victory) {
            res.victory = true;
            return res;
        }
        if (out.instance.kind != InstanceKind::PlainEnumeration &&
            out.instance.kind != InstanceKind::TaggedFamilyEnumeration)
            throw std::invalid_argument(
                "strategy_bounds: move is not a bounded-enumeration instance");

        u64 b = 0;
        try {
            for (u64 s = 0; s <= p.m; ++s)
                for (u64 t : out.instance.enu.emit(s)) {
                    const u64 v =
                        out.instance.kind == InstanceKind::TaggedFamilyEnumeration
                            ? unpair_code(t).second
                            : t;
                    b = std::max(b, v);
                }
        } catch (const OutOfFuel&) {
            res.fuel_flagged[i] = true;
            return res;
        }
        res.bounds[i] = b;
        res.produced = i + 1;
        history.push_back(coded_oracle(SolutionCandidate::of_number(b)));
    }
    return res;
}

// ---------------------------------------------------------------------------
// density search
//
// Scans extensions of p in (q.m, lexicographic-table) order for one whose
// i-th strategy bound reaches m.
// ---------------------------------------------------------------------------

struct DensityResult {
    bool found = false;
    Condition q;
    u64 scanned = 0;
};

inline DensityResult density_search(u64 i, u64 m, const Condition& p,
                                    const Strategy& strat, u64 horizon,
                                    u64 fuel = 100000) {
    DensityResult res;
    for (u64 qm = p.m; qm <= horizon; ++qm) {
        // free slots: pairs entirely beyond p's domain
        std::vector<u64> free_slots;
        for (u64 y = p.m; y < qm; ++y)
            for (u64 x = p.m; x < y; ++x) free_slots.push_back(Condition::slot(x, y));
        if (free_slots.size() > 20)
            throw std::invalid_argument("density_search: horizon too large");

        Condition base;
        base.m = qm;
        base.table.assign(Condition::table_size(qm), 1); // boundary pairs are 1
        for (u64 y = 1; y < p.m; ++y)
            for (u64 x = 0; x < y; ++x)
                base.table[Condition::slot(x, y)] = p.at(x, y);

        const u64 count = u64{1} << free_slots.size();
        for (u64 mask = 0; mask < count; ++mask) {
            Condition q = base;
            for (std::size_t j = 0; j < free_slots.size(); ++j)
                q.table[free_slots[j]] =
                    (mask >> (free_slots.size() - 1 - j)) & 1;
            ++res.scanned;
            BoundsResult b = strategy_bounds(q, strat, i + 1, fuel);
            if (!b.fuel_flagged[i] && b.bounds[i] >= m) {
                res.found = true;
                res.q = std::move(q);
                return res;
            }
        }
    }
    return res;
}

/// All canonical conditions with length up to max_m, in (m, lex-table) order.
inline std::vector<Condition> all_conditions(u64 max_m) {
    std::vector<Condition> out;
    for (u64 m = 0; m <= max_m; ++m) {
        const u64 sz = Condition::table_size(m);
        if (sz > 20) throw std::invalid_argument("all_conditions: m too large");
        for (u64 mask = 0; mask < (u64{1} << sz); ++mask) {
            Condition c;
            c.m = m;
            c.table.resize(sz);
            for (u64 j = 0; j < sz; ++j)
                c.table[j] = (mask >> (sz - 1 - j)) & 1;
            out.push_back(std::move(c));
        }
    }
    return out;
}

} // namespace rg

#endif
