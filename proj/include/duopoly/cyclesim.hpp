#pragma once

/**
 * Periodic duopoly game. Each cycle runs
 *
 *   1. the homogeneous Cournot phase,
 *   2. the R&D decision, taken as the unique pure equilibrium of the R&D game,
 *   3. the differentiated phase: if both firms innovate they sit at the ends
 *      of the Hotelling line (maximal differentiation); otherwise the
 *      homogeneous outcome carries over,
 *   4. innovators pay the sunk R&D cost scaled by 1/A(t).
 *
 * decompose() then splits the per-cycle change of technology into cost
 * decline and differentiation, dT = -dC + dD.
 */

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "duopoly/cournot.hpp"
#include "duopoly/error.hpp"
#include "duopoly/hotelling.hpp"
#include "duopoly/parse.hpp"
#include "duopoly/rdgame.hpp"
#include "duopoly/techcost.hpp"

namespace duopoly::cyclesim {

struct CycleConfig {
    std::size_t numCycles = 1;
    double cournotCap = 0.0;
    hotelling::LinearMarket market;
    rdgame::BimatrixGame rdGame;  // rows are firm A, columns firm B
    techcost::TechSchedule sched;
    double rdFixedCost = 0.0;
    std::string innovateLabel = "R&D";
};

struct CycleRecord {
    std::size_t cycle = 0;
    double progress = 1.0;  // A(t)
    double phase1ProfitA = 0.0;
    double phase1ProfitB = 0.0;
    std::string choiceA;
    std::string choiceB;
    bool innovatesA = false;
    bool innovatesB = false;
    double phase2GrossA = 0.0;
    double phase2GrossB = 0.0;
    double costPaidA = 0.0;
    double costPaidB = 0.0;
    double netProfitA = 0.0;  // phase-2 gross minus cost paid
    double netProfitB = 0.0;
    double differentiation = 0.0;  // D(t): firm separation, L or 0
    double costLevel = 0.0;        // C(t): unit production cost at period t

    friend bool operator==(const CycleRecord&, const CycleRecord&) = default;
};

struct Trajectory {
    std::vector<CycleRecord> cycles;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct DecompositionStep {
    std::size_t fromCycle = 0;
    double dC = 0.0;
    double dD = 0.0;
    double dT = 0.0;
};

inline void validate(const CycleConfig& cfg) {
    if (cfg.numCycles < 1) {
        throw InvalidArgument("cyclesim: num_cycles must be >= 1");
    }
    cournot::validate(cournot::CournotMarket{cfg.cournotCap});
    hotelling::validate(cfg.market);
    techcost::validate(cfg.sched);
    if (!(cfg.rdFixedCost >= 0.0) || !std::isfinite(cfg.rdFixedCost)) {
        throw InvalidArgument("cyclesim: rd_fixed_cost must be finite and >= 0");
    }
    if (!cfg.rdGame.row_index(cfg.innovateLabel) || !cfg.rdGame.col_index(cfg.innovateLabel)) {
        throw InvalidArgument("cyclesim: innovation strategy '" + cfg.innovateLabel +
                              "' missing from the R&D game");
    }
    if (const auto horizon = cfg.sched.progress.horizon(); horizon && *horizon < cfg.numCycles) {
        throw InvalidArgument("cyclesim: progress table covers " + std::to_string(*horizon) +
                              " periods, need " + std::to_string(cfg.numCycles));
    }
}

inline Trajectory run(const CycleConfig& cfg) {
    validate(cfg);

    const auto equilibria = rdgame::pure_nash(cfg.rdGame);
    if (equilibria.empty()) {
        throw Error("cyclesim: the R&D game has no pure equilibrium");
    }
    if (equilibria.size() > 1) {
        throw MultipleEquilibria("cyclesim: the R&D game has " + std::to_string(equilibria.size()) +
                                 " pure equilibria; the cycle needs exactly one");
    }
    const rdgame::StrategyProfile& choice = equilibria.front();
    const bool innovA = choice.rowChoice == cfg.innovateLabel;
    const bool innovB = choice.colChoice == cfg.innovateLabel;

    const auto phase1 = cournot::equilibrium(cournot::CournotMarket{cfg.cournotCap});
    const double unitCost = techcost::unit_cost(cfg.sched);

    double grossA = phase1.profitA;
    double grossB = phase1.profitB;
    double differentiation = 0.0;
    if (innovA && innovB) {
        const auto phase2 = hotelling::equilibrium_outcome(cfg.market, hotelling::Locations{0.0, 0.0});
        grossA = phase2.profitA;
        grossB = phase2.profitB;
        differentiation = cfg.market.length;
    }

    Trajectory traj;
    traj.cycles.reserve(cfg.numCycles);
    for (std::size_t t = 0; t < cfg.numCycles; ++t) {
        CycleRecord rec;
        rec.cycle = t;
        rec.progress = techcost::progress_factor(cfg.sched, t);
        rec.phase1ProfitA = phase1.profitA;
        rec.phase1ProfitB = phase1.profitB;
        rec.choiceA = choice.rowChoice;
        rec.choiceB = choice.colChoice;
        rec.innovatesA = innovA;
        rec.innovatesB = innovB;
        rec.phase2GrossA = grossA;
        rec.phase2GrossB = grossB;
        rec.costPaidA = innovA ? cfg.rdFixedCost / rec.progress : 0.0;
        rec.costPaidB = innovB ? cfg.rdFixedCost / rec.progress : 0.0;
        rec.netProfitA = rec.phase2GrossA - rec.costPaidA;
        rec.netProfitB = rec.phase2GrossB - rec.costPaidB;
        rec.differentiation = differentiation;
        rec.costLevel = unitCost / rec.progress;
        traj.cycles.push_back(std::move(rec));
    }
    return traj;
}

inline std::vector<DecompositionStep> decompose(const Trajectory& traj) {
    if (traj.cycles.size() < 2) {
        throw InvalidArgument("cyclesim: decomposition needs at least two cycles");
    }
    std::vector<DecompositionStep> steps;
    steps.reserve(traj.cycles.size() - 1);
    for (std::size_t i = 1; i < traj.cycles.size(); ++i) {
        const CycleRecord& prev = traj.cycles[i - 1];
        const CycleRecord& cur = traj.cycles[i];
        DecompositionStep s;
        s.fromCycle = prev.cycle;
        s.dC = cur.costLevel - prev.costLevel;
        s.dD = cur.differentiation - prev.differentiation;
        s.dT = -s.dC + s.dD;
        steps.push_back(s);
    }
    return steps;
}

/**
 * Reads a cycle configuration from `key = value` lines ('#' comments).
 *
 *   num_cycles       positive integer
 *   cournot_cap      demand intercept of the homogeneous phase
 *   length           Hotelling line length L
 *   disutility       Hotelling disutility coefficient c
 *   rd_game          path of the R&D game file, relative to the config file
 *   rd_fixed_cost    sunk R&D cost per innovating firm at A = 1
 *   capital_rate     v
 *   wage             w
 *   alpha            capital share of the Cobb-Douglas technology
 *   progress_growth  g, for A(t) = (1 + g)^t      (exactly one of these two)
 *   progress_table   comma-separated A(0), A(1), ...
 *   innovate_label   optional, defaults to "R&D"
 */
inline CycleConfig parse_config(std::string_view text, const std::filesystem::path& baseDir = {}) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    for (int lineNo = 1; std::getline(in, line); ++lineNo) {
        const std::string body = detail::trim(detail::strip_comment(line));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ParseError("config line " + std::to_string(lineNo) + ": expected key = value");
        }
        const std::string key = detail::trim(std::string_view(body).substr(0, eq));
        const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
        if (!kv.emplace(key, value).second) {
            throw ParseError("config line " + std::to_string(lineNo) + ": duplicate key '" + key + "'");
        }
    }

    static const char* const known[] = {"num_cycles", "cournot_cap",   "length",        "disutility",
                                        "rd_game",    "rd_fixed_cost", "capital_rate",  "wage",
                                        "alpha",      "progress_growth", "progress_table", "innovate_label"};
    for (const auto& [key, _] : kv) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ParseError("config: unknown key '" + key + "'");
    }
    auto required = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ParseError("config: missing key '" + key + "'");
        return it->second;
    };
    auto number = [&](const std::string& key) { return detail::parse_double(required(key), key); };

    const long long cycles = detail::parse_integer(required("num_cycles"), "num_cycles");
    if (cycles < 1) throw ParseError("config: num_cycles must be >= 1");

    techcost::ProgressPath progress;
    const bool hasGrowth = kv.count("progress_growth") != 0;
    const bool hasTable = kv.count("progress_table") != 0;
    if (hasGrowth == hasTable) {
        throw ParseError("config: give exactly one of progress_growth or progress_table");
    }
    try {
        progress = hasGrowth ? techcost::ProgressPath(techcost::GeometricGrowth{number("progress_growth")})
                             : techcost::ProgressPath(techcost::ProgressTable{
                                   detail::parse_double_list(kv.at("progress_table"), "progress_table")});
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("config: ") + e.what());
    }

    std::filesystem::path gamePath = required("rd_game");
    if (gamePath.is_relative()) gamePath = baseDir / gamePath;

    CycleConfig cfg{
        .numCycles = static_cast<std::size_t>(cycles),
        .cournotCap = number("cournot_cap"),
        .market = {number("length"), number("disutility")},
        .rdGame = rdgame::load_game(gamePath.string()),
        .sched = {number("capital_rate"), number("wage"), number("alpha"), progress},
        .rdFixedCost = number("rd_fixed_cost"),
    };
    if (const auto it = kv.find("innovate_label"); it != kv.end()) {
        cfg.innovateLabel = it->second;
    }
    return cfg;
}

inline CycleConfig load_config(const std::string& path) {
    const std::filesystem::path p(path);
    return parse_config(detail::read_file(path), p.parent_path());
}

}  // namespace duopoly::cyclesim
