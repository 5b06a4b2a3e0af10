// Command line harness: batch runs, tournament matrix, diagram checks,
// forcing probes, and a text REPL where a human plays Player 1.
//
// Exit codes: 0 clean verdict, 2 configuration error, 3 invariant breach.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "redgame/adversaries.hpp"
#include "redgame/diagram.hpp"
#include "redgame/forcing.hpp"
#include "redgame/strategies.hpp"
#include "redgame/transcript_io.hpp"

using namespace rg;

namespace {

struct ConfigArgs {
    u64 depth = 32;
    u64 fuel = 100000;
    u64 max_p2_moves = 16;
    u64 seed = 0;
    std::string config_file;
};

void add_config_flags(CLI::App* cmd, ConfigArgs& c) {
    cmd->add_option("--depth", c.depth, "observation depth");
    cmd->add_option("--fuel", c.fuel, "fuel per move");
    cmd->add_option("--max-p2-moves", c.max_p2_moves, "move cutoff");
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--config", c.config_file, "key=value config file");
}

GameConfig resolve_config(const ConfigArgs& c) {
    GameConfig cfg;
    cfg.depth = c.depth;
    cfg.fuel_per_move = c.fuel;
    cfg.max_p2_moves = c.max_p2_moves;
    cfg.seed = c.seed;
    if (!c.config_file.empty()) {
        std::ifstream in(c.config_file);
        if (!in) throw std::invalid_argument("cannot open config: " + c.config_file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("malformed config line: " + line);
            const std::string key = line.substr(0, eq);
            const u64 val = std::stoull(line.substr(eq + 1));
            if (key == "depth") cfg.depth = val;
            else if (key == "fuel") cfg.fuel_per_move = val;
            else if (key == "max_p2_moves") cfg.max_p2_moves = val;
            else if (key == "seed") cfg.seed = val;
            else throw std::invalid_argument("unknown config key: " + key);
        }
    }
    return cfg;
}

std::string verdict_line(const Verdict& v) {
    std::ostringstream os;
    os << detail::verdict_kind_name(v.kind);
    if (v.kind == VerdictKind::P2Win) os << "(" << v.p2_moves << ")";
    if (v.kind == VerdictKind::IllegalMove || v.kind == VerdictKind::FuelExhausted)
        os << "(player " << v.player << ")";
    if (v.witness) os << " [" << v.witness->what << "]";
    return os.str();
}

Adversary resolve_adversary(const std::string& name, const std::string& p,
                            const std::string& q) {
    if (name == "honest" || name.rfind("honest(", 0) == 0)
        return make_honest_adversary(p, q);
    if (name == "scripted") {
        // sampled opening, no scripted answers: stuck on any question
        Adversary a;
        a.name = "scripted";
        a.open = [p](u64 seed, const GameConfig&) -> std::optional<Instance> {
            return problem(p).sample(seed, {});
        };
        a.respond = [](const Instance&, u64,
                       const GameConfig&) -> std::optional<SolutionCandidate> {
            return std::nullopt;
        };
        return a;
    }
    throw std::invalid_argument("unknown adversary: " + name);
}

Condition parse_condition(const std::string& text) {
    // "m:bits" with the table in lexicographic slot order, e.g. "3:010"
    const auto colon = text.find(':');
    const u64 m = std::stoull(colon == std::string::npos ? text
                                                         : text.substr(0, colon));
    std::string bits = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (bits.size() != Condition::table_size(m))
        throw std::invalid_argument("condition needs " +
                                    std::to_string(Condition::table_size(m)) +
                                    " table bits");
    std::vector<u64> table;
    for (char b : bits) {
        if (b != '0' && b != '1')
            throw std::invalid_argument("condition bits must be 0/1");
        table.push_back(b - '0');
    }
    return Condition::make(m, std::move(table));
}

std::vector<u64> parse_numbers(const std::string& line) {
    std::istringstream is(line);
    std::vector<u64> out;
    u64 v;
    while (is >> v) out.push_back(v);
    return out;
}

// REPL: a human types Player 1's moves as finite prefixes, extended
// canonically (colorings cycle, streams continue with the last difference).
Adversary repl_adversary(const ProblemSpec& P, std::istream& in, std::ostream& out) {
    Adversary a;
    a.name = "repl";
    a.open = [&P, &in, &out](u64, const GameConfig&) -> std::optional<Instance> {
        while (true) {
            out << "opening " << P.name
                << " instance: enter values (colorings cycle; enumerations emit "
                   "one token per stage):\n> "
                << std::flush;
            std::string line;
            if (!std::getline(in, line)) return std::nullopt;
            auto vals = parse_numbers(line);
            if (vals.empty()) {
                out << "need at least one value\n";
                continue;
            }
            Instance inst;
            inst.kind = P.kind;
            inst.generator = "repl";
            auto v = std::make_shared<std::vector<u64>>(vals);
            switch (P.kind) {
            case InstanceKind::TotalColoring:
            case InstanceKind::RangeBoundedColoring:
            case InstanceKind::ArbitrarySet:
                inst.fn = [v](u64 x) { return (*v)[x % v->size()]; };
                if (P.kind == InstanceKind::TotalColoring)
                    inst.header = {*std::max_element(v->begin(), v->end()) + 1};
                break;
            case InstanceKind::PairColoring:
                inst.fn2 = [v](u64 x, u64 y) { return (*v)[(x + y) % v->size()]; };
                break;
            case InstanceKind::PlainEnumeration:
            case InstanceKind::TaggedFamilyEnumeration:
            case InstanceKind::PairEnumeration:
                inst.enu = Enumeration{[v](u64 s) -> std::vector<u64> {
                    if (s < v->size()) return {(*v)[s]};
                    return {};
                }};
                if (P.kind == InstanceKind::TaggedFamilyEnumeration) {
                    u64 fams = 1;
                    for (u64 t : *v) fams = std::max(fams, unpair_code(t).first + 1);
                    inst.header = {fams};
                }
                break;
            default:
                out << "this problem kind has no REPL input form\n";
                return std::nullopt;
            }
            return inst;
        }
    };
    a.respond = [&in, &out](const Instance& inst, u64 idx, const GameConfig& cfg)
        -> std::optional<SolutionCandidate> {
        out << "question " << idx << " (depth-truncated table):\n";
        for (const auto& [pos, val] : instance_table(inst, cfg.depth))
            if (val) out << "  " << pos << " -> " << val << "\n";
        while (true) {
            out << "answer (`number n` | `tuple a b ...` | `stream s0 s1 ...`):\n> "
                << std::flush;
            std::string line;
            if (!std::getline(in, line)) return std::nullopt;
            std::istringstream is(line);
            std::string kind;
            is >> kind;
            std::string rest;
            std::getline(is, rest);
            auto vals = parse_numbers(rest);
            if (kind == "number" && vals.size() == 1)
                return SolutionCandidate::of_number(vals[0]);
            if (kind == "tuple" && !vals.empty())
                return SolutionCandidate::of_tuple(vals);
            if (kind == "stream" && !vals.empty()) {
                auto v = std::make_shared<std::vector<u64>>(vals);
                return SolutionCandidate::of_stream([v](u64 n) -> u64 {
                    if (n < v->size()) return (*v)[n];
                    const u64 last = v->back();
                    const u64 d = v->size() > 1
                                      ? (v->back() >= (*v)[v->size() - 2]
                                             ? v->back() - (*v)[v->size() - 2]
                                             : 0)
                                      : 1;
                    return last + (d ? d : 1) * (n - v->size() + 1);
                });
            }
            out << "malformed answer, try again\n";
        }
    };
    return a;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduction game engine"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "play one game");
    std::string run_p, run_q, run_strategy, run_adversary = "honest", run_out;
    ConfigArgs run_cfg;
    run->add_option("p", run_p, "Player 1's problem")->required();
    run->add_option("q", run_q, "oracle problem")->required();
    run->add_option("strategy", run_strategy, "Player 2 strategy")->required();
    run->add_option("adversary", run_adversary, "Player 1 adversary");
    run->add_option("--out", run_out, "transcript output path");
    add_config_flags(run, run_cfg);

    // tournament
    auto* tour = app.add_subcommand("tournament", "run the full strategy matrix");
    u64 tour_seeds = 20;
    bool tour_negctl = false;
    std::string tour_adversaries = "honest";
    ConfigArgs tour_cfg;
    tour->add_option("--seeds", tour_seeds, "seeds per cell");
    tour->add_option("--adversaries", tour_adversaries, "adversary set");
    tour->add_flag("--include-negative-control", tour_negctl,
                   "include the mis-declared-bound fixture");
    add_config_flags(tour, tour_cfg);

    // check-diagram
    auto* chk = app.add_subcommand("check-diagram", "audit one diagram");
    int chk_id = 0;
    u64 chk_seeds = 5;
    ConfigArgs chk_cfg;
    chk->add_option("id", chk_id, "diagram id 1..5")->required();
    chk->add_option("--seeds", chk_seeds, "seeds per implemented arrow");
    add_config_flags(chk, chk_cfg);

    // repl
    auto* repl = app.add_subcommand("repl", "play Player 1 interactively");
    std::string repl_p, repl_q, repl_strategy, repl_out;
    ConfigArgs repl_cfg;
    repl->add_option("p", repl_p, "Player 1's problem")->required();
    repl->add_option("q", repl_q, "oracle problem")->required();
    repl->add_option("strategy", repl_strategy, "Player 2 strategy")->required();
    repl->add_option("--out", repl_out, "transcript output path");
    add_config_flags(repl, repl_cfg);

    // forcing
    auto* forcing = app.add_subcommand("forcing", "condition probes");
    forcing->require_subcommand(1);
    auto* fb = forcing->add_subcommand("bounds", "strategy bounds on a condition");
    std::string fb_cond = "0", fb_strategy;
    u64 fb_n = 4, fb_fuel = 100000;
    fb->add_option("strategy", fb_strategy, "strategy to probe")->required();
    fb->add_option("--condition", fb_cond, "condition as m:bits");
    fb->add_option("--n", fb_n, "number of bounds");
    fb->add_option("--fuel", fb_fuel, "fuel per simulated move");
    auto* fd = forcing->add_subcommand("density", "search for a dense extension");
    std::string fd_cond = "0", fd_strategy;
    u64 fd_i = 0, fd_m = 1, fd_horizon = 4, fd_fuel = 100000;
    fd->add_option("strategy", fd_strategy, "strategy to probe")->required();
    fd->add_option("--i", fd_i, "bound index");
    fd->add_option("--m", fd_m, "target bound");
    fd->add_option("--condition", fd_cond, "condition as m:bits");
    fd->add_option("--horizon", fd_horizon, "max extension length");
    fd->add_option("--fuel", fd_fuel, "fuel per simulated move");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            GameConfig cfg = resolve_config(run_cfg);
            const ProblemSpec& P = problem(run_p);
            const ProblemSpec& Q = problem(run_q);
            Strategy s = strategy(run_strategy, run_q);
            if (run_adversary == "adv_rt12_vs_cn") {
                DiagonalReport rep = adv_rt12_vs_cn(s, cfg);
                std::cout << verdict_line(rep.transcript.verdict)
                          << (rep.inconclusive ? " [inconclusive]" : "") << "\n";
                if (!run_out.empty()) save_transcript(run_out, rep.transcript);
                return 0;
            }
            if (run_adversary == "adv_cn_vs_rt1inf") {
                DiagonalReport rep = adv_cn_vs_rt1inf(s, 3, cfg);
                std::cout << verdict_line(rep.transcript.verdict)
                          << (rep.inconclusive ? " [inconclusive]" : "") << "\n";
                if (!run_out.empty()) save_transcript(run_out, rep.transcript);
                return 0;
            }
            Adversary adv = resolve_adversary(run_adversary, run_p, run_q);
            Transcript t = play_game(P, Q, s, adv, cfg);
            std::cout << verdict_line(t.verdict) << "\n";
            if (!run_out.empty()) save_transcript(run_out, t);
            return 0;
        }

        if (*tour) {
            if (tour_adversaries.empty())
                throw std::invalid_argument("empty adversary set");
            GameConfig cfg = resolve_config(tour_cfg);
            RunReport rep = run_tournament(tour_seeds, cfg, tour_negctl);
            for (const auto& c : rep.cells)
                std::cout << c.p << " via " << c.q << " [" << c.strategy << "] vs "
                          << c.adversary << ": " << c.wins << "/" << c.games
                          << " wins, " << c.bound_violations << " violations, "
                          << c.errors << " errors\n";
            std::cout << "total bound violations: " << rep.total_violations << "\n";
            return 0;
        }

        if (*chk) {
            if (chk_id < 1 || chk_id > 5)
                throw std::invalid_argument("diagram id must be 1..5");
            GameConfig cfg = resolve_config(chk_cfg);
            bool all_pass = true;
            for (const ArrowResult& r : check_diagram(chk_id, chk_seeds, cfg)) {
                std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.arrow.p
                          << " <= " << r.arrow.q << " (" << r.arrow.relation
                          << ", " << r.arrow.status << ")";
                if (!r.arrow.strategy.empty())
                    std::cout << " via " << r.arrow.strategy;
                if (!r.note.empty()) std::cout << " -- " << r.note;
                std::cout << "\n";
                if (!r.pass) all_pass = false;
            }
            return all_pass ? 0 : 1;
        }

        if (*repl) {
            GameConfig cfg = resolve_config(repl_cfg);
            const ProblemSpec& P = problem(repl_p);
            const ProblemSpec& Q = problem(repl_q);
            Strategy s = strategy(repl_strategy, repl_q);
            Adversary adv = repl_adversary(P, std::cin, std::cout);
            Transcript t = play_game(P, Q, s, adv, cfg);
            std::cout << verdict_line(t.verdict) << "\n";
            if (!repl_out.empty()) save_transcript(repl_out, t);
            return 0;
        }

        if (*fb) {
            Condition p = parse_condition(fb_cond);
            Strategy s = strategy(fb_strategy, "bound_star");
            BoundsResult r = strategy_bounds(p, s, fb_n, fb_fuel);
            for (u64 i = 0; i < r.bounds.size(); ++i)
                std::cout << "b_" << i << " = " << r.bounds[i]
                          << (r.fuel_flagged[i] ? " (fuel exhausted)" : "") << "\n";
            if (r.victory) std::cout << "strategy declared victory\n";
            return 0;
        }

        if (*fd) {
            Condition p = parse_condition(fd_cond);
            Strategy s = strategy(fd_strategy, "bound_star");
            DensityResult r = density_search(fd_i, fd_m, p, s, fd_horizon, fd_fuel);
            if (r.found) {
                std::cout << "found: m=" << r.q.m << " table=";
                for (u64 b : r.q.table) std::cout << b;
                std::cout << " (scanned " << r.scanned << ")\n";
            } else {
                std::cout << "exhausted (scanned " << r.scanned << ")\n";
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
