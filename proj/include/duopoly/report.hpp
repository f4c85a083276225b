#pragma once

// JSON and CSV rendering of solver results. Numbers are rounded to 12
// significant digits in both formats.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "duopoly/cournot.hpp"
#include "duopoly/cyclesim.hpp"
#include "duopoly/hotelling.hpp"
#include "duopoly/rdgame.hpp"

namespace duopoly::report {

using json = nlohmann::json;

inline constexpr int kSignificantDigits = 12;

inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
    return buf;
}

/// x rounded to 12 significant digits; serializes back to at most 12 digits.
inline double round_sig(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

// Cournot ------------------------------------------------------------------

inline json to_json(double cap, const cournot::CournotOutcome& o) {
    return {{"cap", round_sig(cap)},           {"qA", round_sig(o.qA)},
            {"qB", round_sig(o.qB)},           {"price", round_sig(o.price)},
            {"profitA", round_sig(o.profitA)}, {"profitB", round_sig(o.profitB)}};
}

inline std::string cournot_csv(double cap, const cournot::CournotOutcome& o) {
    std::ostringstream os;
    os << "cap,qA,qB,price,profitA,profitB\n"
       << format_number(cap) << ',' << format_number(o.qA) << ',' << format_number(o.qB) << ','
       << format_number(o.price) << ',' << format_number(o.profitA) << ',' << format_number(o.profitB) << '\n';
    return os.str();
}

// Hotelling ----------------------------------------------------------------

inline json to_json(const hotelling::LinearMarket& m, const hotelling::Locations& l,
                    const hotelling::HotellingOutcome& o) {
    return {{"L", round_sig(m.length)},
            {"c", round_sig(m.disutility)},
            {"locA", round_sig(l.locA)},
            {"locB", round_sig(l.locB)},
            {"pA", round_sig(o.prices.pA)},
            {"pB", round_sig(o.prices.pB)},
            {"x", round_sig(o.x)},
            {"y", round_sig(o.y)},
            {"demandA", round_sig(o.demandA)},
            {"demandB", round_sig(o.demandB)},
            {"profitA", round_sig(o.profitA)},
            {"profitB", round_sig(o.profitB)},
            {"eShare", round_sig(o.eShare)}};
}

inline std::string hotelling_csv(const hotelling::LinearMarket& m, const hotelling::Locations& l,
                                 const hotelling::HotellingOutcome& o) {
    std::ostringstream os;
    os << "L,c,locA,locB,pA,pB,x,y,demandA,demandB,profitA,profitB,eShare\n";
    for (double v : {m.length, m.disutility, l.locA, l.locB, o.prices.pA, o.prices.pB, o.x, o.y,
                     o.demandA, o.demandB, o.profitA, o.profitB}) {
        os << format_number(v) << ',';
    }
    os << format_number(o.eShare) << '\n';
    return os.str();
}

inline constexpr const char* kSweepHeader = "locA,locB,pA,pB,profitA,profitB,F,dE_dLocA,dPiA_dLocA,dPiB_dLocB";

inline std::string sweep_csv(const std::vector<hotelling::SweepRow>& rows) {
    std::ostringstream os;
    os << kSweepHeader << '\n';
    for (const auto& r : rows) {
        os << format_number(r.locs.locA) << ',' << format_number(r.locs.locB) << ','
           << format_number(r.prices.pA) << ',' << format_number(r.prices.pB) << ','
           << format_number(r.profitA) << ',' << format_number(r.profitB) << ',' << format_number(r.F)
           << ',' << format_number(r.dEShare_dLocA) << ',' << format_number(r.gradient.dProfitA_dLocA)
           << ',' << format_number(r.gradient.dProfitB_dLocB) << '\n';
    }
    return os.str();
}

inline json sweep_json(const std::vector<hotelling::SweepRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"locA", round_sig(r.locs.locA)},
                       {"locB", round_sig(r.locs.locB)},
                       {"pA", round_sig(r.prices.pA)},
                       {"pB", round_sig(r.prices.pB)},
                       {"profitA", round_sig(r.profitA)},
                       {"profitB", round_sig(r.profitB)},
                       {"F", round_sig(r.F)},
                       {"dE_dLocA", round_sig(r.dEShare_dLocA)},
                       {"dPiA_dLocA", round_sig(r.gradient.dProfitA_dLocA)},
                       {"dPiB_dLocB", round_sig(r.gradient.dProfitB_dLocB)}});
    }
    return arr;
}

// R&D game -----------------------------------------------------------------

inline json to_json(const rdgame::StrategyProfile& p) {
    return {{"row", p.rowChoice}, {"col", p.colChoice},
            {"payoffs", {round_sig(p.payoffs.row), round_sig(p.payoffs.col)}}};
}

inline json game_report(const rdgame::BimatrixGame& game) {
    json out;
    out["rows"] = game.row_strategies();
    out["cols"] = game.col_strategies();
    json eq = json::array();
    for (const auto& p : rdgame::pure_nash(game)) eq.push_back(to_json(p));
    out["pure_nash"] = eq;
    const auto dom = rdgame::dominant_strategies(game);
    out["dominant"] = {{"row", dom.row ? json(game.row_strategies()[*dom.row]) : json(nullptr)},
                       {"col", dom.col ? json(game.col_strategies()[*dom.col]) : json(nullptr)}};
    if (game.num_rows() == 2 && game.num_cols() == 2) {
        const auto cert = rdgame::classify_prisoners_dilemma(game);
        out["prisoners_dilemma"] = {
            {"is_dilemma", cert.isDilemma},
            {"equilibrium", cert.equilibrium ? to_json(*cert.equilibrium) : json(nullptr)},
            {"dominated_by", cert.dominatedBy ? to_json(*cert.dominatedBy) : json(nullptr)}};
    } else {
        out["prisoners_dilemma"] = nullptr;
    }
    return out;
}

inline std::string game_csv(const rdgame::BimatrixGame& game) {
    std::ostringstream os;
    os << "row,col,rowPayoff,colPayoff\n";
    for (const auto& p : rdgame::pure_nash(game)) {
        os << p.rowChoice << ',' << p.colChoice << ',' << format_number(p.payoffs.row) << ','
           << format_number(p.payoffs.col) << '\n';
    }
    return os.str();
}

// Cycle simulation ---------------------------------------------------------

inline json to_json(const cyclesim::CycleRecord& r) {
    return {{"cycle", r.cycle},
            {"progress", round_sig(r.progress)},
            {"phase1_profitA", round_sig(r.phase1ProfitA)},
            {"phase1_profitB", round_sig(r.phase1ProfitB)},
            {"choiceA", r.choiceA},
            {"choiceB", r.choiceB},
            {"phase2_grossA", round_sig(r.phase2GrossA)},
            {"phase2_grossB", round_sig(r.phase2GrossB)},
            {"cost_paidA", round_sig(r.costPaidA)},
            {"cost_paidB", round_sig(r.costPaidB)},
            {"net_profitA", round_sig(r.netProfitA)},
            {"net_profitB", round_sig(r.netProfitB)},
            {"differentiation", round_sig(r.differentiation)},
            {"cost_level", round_sig(r.costLevel)}};
}

inline json trajectory_json(const cyclesim::Trajectory& traj) {
    json cycles = json::array();
    for (const auto& r : traj.cycles) cycles.push_back(to_json(r));
    json steps = json::array();
    if (traj.cycles.size() >= 2) {
        for (const auto& s : cyclesim::decompose(traj)) {
            steps.push_back({{"from_cycle", s.fromCycle},
                             {"dC", round_sig(s.dC)},
                             {"dD", round_sig(s.dD)},
                             {"dT", round_sig(s.dT)}});
        }
    }
    return {{"cycles", cycles}, {"decomposition", steps}};
}

inline constexpr const char* kTrajectoryHeader =
    "cycle,progress,phase1_profitA,phase1_profitB,choiceA,choiceB,phase2_grossA,phase2_grossB,"
    "cost_paidA,cost_paidB,net_profitA,net_profitB,differentiation,cost_level";

inline std::string trajectory_csv(const cyclesim::Trajectory& traj) {
    std::ostringstream os;
    os << kTrajectoryHeader << '\n';
    for (const auto& r : traj.cycles) {
        os << r.cycle << ',' << format_number(r.progress) << ',' << format_number(r.phase1ProfitA) << ','
           << format_number(r.phase1ProfitB) << ',' << r.choiceA << ',' << r.choiceB << ','
           << format_number(r.phase2GrossA) << ',' << format_number(r.phase2GrossB) << ','
           << format_number(r.costPaidA) << ',' << format_number(r.costPaidB) << ','
           << format_number(r.netProfitA) << ',' << format_number(r.netProfitB) << ','
           << format_number(r.differentiation) << ',' << format_number(r.costLevel) << '\n';
    }
    return os.str();
}

}  // namespace duopoly::report
