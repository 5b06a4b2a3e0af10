#ifndef REDGAME_TRANSCRIPT_IO_HPP
#define REDGAME_TRANSCRIPT_IO_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "redgame/adversaries.hpp"
#include "redgame/engine.hpp"

namespace rg {

constexpr int kTranscriptSchemaVersion = 1;

namespace detail {

inline std::string verdict_kind_name(VerdictKind k) {
    switch (k) {
    case VerdictKind::P2Win: return "p2_win";
    case VerdictKind::P1WinStuckOpponent: return "p1_win_stuck_opponent";
    case VerdictKind::P2WinStuckOpponent: return "p2_win_stuck_opponent";
    case VerdictKind::IllegalMove: return "illegal_move";
    case VerdictKind::FuelExhausted: return "fuel_exhausted";
    case VerdictKind::NonterminatingCutoff: return "nonterminating_cutoff";
    }
    return "unknown";
}

inline VerdictKind verdict_kind_from(const std::string& s) {
    if (s == "p2_win") return VerdictKind::P2Win;
    if (s == "p1_win_stuck_opponent") return VerdictKind::P1WinStuckOpponent;
    if (s == "p2_win_stuck_opponent") return VerdictKind::P2WinStuckOpponent;
    if (s == "illegal_move") return VerdictKind::IllegalMove;
    if (s == "fuel_exhausted") return VerdictKind::FuelExhausted;
    if (s == "nonterminating_cutoff") return VerdictKind::NonterminatingCutoff;
    throw std::invalid_argument("unknown verdict kind: " + s);
}

inline std::string check_status_name(CheckResult::Status s) {
    switch (s) {
    case CheckResult::Status::Accepted: return "accepted";
    case CheckResult::Status::Refuted: return "refuted";
    case CheckResult::Status::Unknown: return "unknown";
    }
    return "unknown";
}

inline CheckResult::Status check_status_from(const std::string& s) {
    if (s == "accepted") return CheckResult::Status::Accepted;
    if (s == "refuted") return CheckResult::Status::Refuted;
    if (s == "unknown") return CheckResult::Status::Unknown;
    throw std::invalid_argument("unknown check status: " + s);
}

} // namespace detail

inline nlohmann::json to_json(const Transcript& t) {
    nlohmann::json j;
    j["schema_version"] = kTranscriptSchemaVersion;
    j["p"] = t.p;
    j["q"] = t.q;
    j["strategy"] = t.strategy;
    j["adversary"] = t.adversary;
    j["seed"] = t.config.seed;
    j["config"] = {{"depth", t.config.depth},
                   {"fuel", t.config.fuel_per_move},
                   {"max_p2_moves", t.config.max_p2_moves},
                   {"seed", t.config.seed}};
    j["moves"] = nlohmann::json::array();
    for (const MoveRecord& m : t.moves) {
        nlohmann::json jm;
        jm["player"] = m.player;
        jm["index"] = m.index;
        jm["kind"] = m.kind;
        jm["digest"] = m.digest;
        jm["check"] = detail::check_status_name(m.check);
        jm["payload"] = nlohmann::json::array();
        for (const auto& [pos, val] : m.payload)
            jm["payload"].push_back({pos, val});
        j["moves"].push_back(std::move(jm));
    }
    nlohmann::json jv;
    jv["kind"] = detail::verdict_kind_name(t.verdict.kind);
    jv["p2_moves"] = t.verdict.p2_moves;
    jv["player"] = t.verdict.player;
    if (t.verdict.witness) {
        jv["witness"] = {{"what", t.verdict.witness->what},
                         {"data", t.verdict.witness->data}};
    }
    j["verdict"] = std::move(jv);
    return j;
}

inline Transcript transcript_from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != kTranscriptSchemaVersion)
        throw std::invalid_argument("unsupported transcript schema version");
    Transcript t;
    t.p = j.at("p").get<std::string>();
    t.q = j.at("q").get<std::string>();
    t.strategy = j.at("strategy").get<std::string>();
    t.adversary = j.at("adversary").get<std::string>();
    const auto& jc = j.at("config");
    t.config.depth = jc.at("depth").get<u64>();
    t.config.fuel_per_move = jc.at("fuel").get<u64>();
    t.config.max_p2_moves = jc.at("max_p2_moves").get<u64>();
    t.config.seed = jc.at("seed").get<u64>();
    for (const auto& jm : j.at("moves")) {
        MoveRecord m;
        m.player = jm.at("player").get<int>();
        m.index = jm.at("index").get<u64>();
        m.kind = jm.at("kind").get<std::string>();
        m.digest = jm.at("digest").get<u64>();
        m.check = detail::check_status_from(jm.at("check").get<std::string>());
        for (const auto& cell : jm.at("payload"))
            m.payload.emplace_back(cell.at(0).get<u64>(), cell.at(1).get<u64>());
        t.moves.push_back(std::move(m));
    }
    const auto& jv = j.at("verdict");
    t.verdict.kind = detail::verdict_kind_from(jv.at("kind").get<std::string>());
    t.verdict.p2_moves = jv.at("p2_moves").get<u64>();
    t.verdict.player = jv.at("player").get<int>();
    if (jv.contains("witness"))
        t.verdict.witness =
            Witness{jv.at("witness").at("what").get<std::string>(),
                    jv.at("witness").at("data").get<std::vector<u64>>()};
    return t;
}

inline void save_transcript(const std::string& path, const Transcript& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write transcript: " + path);
    out << to_json(t).dump(2) << "\n";
}

inline Transcript load_transcript(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read transcript: " + path);
    nlohmann::json j;
    in >> j;
    return transcript_from_json(j);
}

/// Reruns a stored game from its registered names and seed. Only transcripts
/// whose adversary is the honest one can be replayed this way.
inline Transcript replay_transcript(const Transcript& t) {
    if (t.adversary.rfind("honest(", 0) != 0)
        throw std::invalid_argument("only honest-adversary transcripts replay: " +
                                    t.adversary);
    const ProblemSpec& P = problem(t.p);
    const ProblemSpec& Q = problem(t.q);
    Strategy s = strategy(t.strategy, t.q);
    Adversary adv = make_honest_adversary(t.p, t.q);
    return play_game(P, Q, s, adv, t.config);
}

} // namespace rg

#endif
