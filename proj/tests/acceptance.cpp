// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "duopoly/cli.hpp"
#include "duopoly/cournot.hpp"
#include "duopoly/cyclesim.hpp"
#include "duopoly/hotelling.hpp"
#include "duopoly/rdgame.hpp"
#include "duopoly/report.hpp"
#include "duopoly/techcost.hpp"
#include "oracles.hpp"

namespace {

using namespace duopoly;

const std::string kData = DUOPOLY_DATA_DIR;

// Collects the first failure message of a criterion.
class Check {
public:
    void require(bool ok, const std::string& what) {
        if (!ok && failure_.empty()) failure_ = what;
    }
    void near(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol)) {
            std::ostringstream os;
            os.precision(17);
            os << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
            require(false, os.str());
        }
    }
    bool passed() const { return failure_.empty(); }
    const std::string& failure() const { return failure_; }

private:
    std::string failure_;
};

std::vector<hotelling::Locations> criterion3_grid() {
    std::vector<hotelling::Locations> grid;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) grid.push_back({0.05 * i, 0.05 * j});
    return grid;
}

void cournot_closed_form(Check& c) {
    for (double cap : {1.0, 3.0, 9.0}) {
        const std::string tag = "cap=" + std::to_string(cap);
        const auto closed = cournot::equilibrium({cap}, cournot::Method::ClosedForm);
        c.near(closed.qA, cap / 3.0, 1e-12, tag + " qA");
        c.near(closed.qB, cap / 3.0, 1e-12, tag + " qB");
        c.near(closed.profitA, cap * cap / 9.0, 1e-12, tag + " profitA");
        c.near(closed.profitB, cap * cap / 9.0, 1e-12, tag + " profitB");
        const auto iter = cournot::equilibrium({cap}, cournot::Method::Iterate);
        c.near(iter.qA, closed.qA, 1e-9, tag + " iterated qA");
        c.near(iter.qB, closed.qB, 1e-9, tag + " iterated qB");
        c.near(iter.profitA, closed.profitA, 1e-9, tag + " iterated profitA");
        c.near(iter.profitB, closed.profitB, 1e-9, tag + " iterated profitB");
    }
}

void hotelling_maximal_differentiation(Check& c) {
    for (auto [L, d] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{1.0, 2.0}}) {
        const std::string tag = "L=" + std::to_string(L) + " c=" + std::to_string(d);
        const auto o = hotelling::equilibrium_outcome({L, d}, {0.0, 0.0});
        c.near(o.prices.pA, d * L * L, 1e-12, tag + " pA");
        c.near(o.prices.pB, d * L * L, 1e-12, tag + " pB");
        c.near(o.profitA, d * L * L * L / 2.0, 1e-12, tag + " profitA");
        c.near(o.profitB, d * L * L * L / 2.0, 1e-12, tag + " profitB");
    }
}

void foc_residuals_and_numeric_prices(Check& c) {
    const hotelling::LinearMarket m{1.0, 1.0};
    for (const auto& l : criterion3_grid()) {
        const std::string tag = "locs=(" + std::to_string(l.locA) + "," + std::to_string(l.locB) + ")";
        const auto closed = hotelling::price_equilibrium(m, l, hotelling::Method::ClosedForm);
        const auto [rA, rB] = hotelling::foc_residuals(m, l, closed);
        c.require(std::abs(rA) < 1e-9 && std::abs(rB) < 1e-9, tag + " FOC residual >= 1e-9");
        const auto numeric = hotelling::price_equilibrium(m, l, hotelling::Method::Numeric);
        c.near(numeric.pA, closed.pA, 1e-9, tag + " numeric pA");
        c.near(numeric.pB, closed.pB, 1e-9, tag + " numeric pB");
    }
}

void split_invariants(Check& c) {
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int sampled = 0;
    while (sampled < 1000) {
        const hotelling::LinearMarket m{0.5 + 2.0 * unit(rng), 0.2 + 3.0 * unit(rng)};
        const hotelling::Locations l{0.45 * m.length * unit(rng), 0.45 * m.length * unit(rng)};
        const double gap = m.length - l.locA - l.locB;
        // Pick the split point first so every sample is interior, then back out pB.
        const double x = gap * unit(rng);
        const double y = gap - x;
        const double pA = m.disutility * m.length * m.length * unit(rng);
        const double pB = pA + m.disutility * (x * x - y * y);
        if (pB < 0.0) continue;
        ++sampled;
        const auto s = hotelling::split(m, l, {pA, pB});
        c.near(l.locA + s.x + s.y + l.locB, m.length, 1e-12, "market clearing");
        c.near(pA + m.disutility * s.x * s.x, pB + m.disutility * s.y * s.y, 1e-9, "indifference");
    }
}

void gradient_property(Check& c) {
    const hotelling::LinearMarket m{1.0, 1.0};
    for (const auto& l : criterion3_grid()) {
        const auto g = hotelling::location_gradient(m, l);
        const std::string tag = "locs=(" + std::to_string(l.locA) + "," + std::to_string(l.locB) + ")";
        c.require(g.dProfitA_dLocA < 0.0, tag + " dPiA/dlocA not negative");
        c.require(g.dProfitB_dLocB < 0.0, tag + " dPiB/dlocB not negative");
    }
    const auto sym = hotelling::location_gradient(m, {0.2, 0.2});
    c.near(sym.dProfitA_dLocA, -0.3, 1e-4, "symmetric gradient A");
    c.near(sym.dProfitB_dLocB, -0.3, 1e-4, "symmetric gradient B");
}

void sign_audit(Check& c) {
    const hotelling::LinearMarket m{1.0, 1.0};
    for (const auto& l : criterion3_grid()) {
        const auto audit = hotelling::diagnostics_F_dE(m, l);
        const double square = (1.0 - l.locA - l.locB) * (1.0 - l.locA - l.locB);
        c.near(audit.F, square, 1e-12, "F vs (L - locA - locB)^2");
        c.require(audit.dEShare_dLocA.has_value(), "dE/dlocA undefined on grid");
        if (audit.dEShare_dLocA) c.near(*audit.dEShare_dLocA, 1.0 / 6.0, 1e-6, "dE/dlocA");
    }
}

void cost_module(Check& c) {
    for (double v : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (double w : {0.25, 1.0, 3.0, 6.0, 12.0}) {
            for (double alpha : {0.25, 0.5, 0.75}) {
                const techcost::TechSchedule s{v, w, alpha, {}};
                const double closed = techcost::cobb_douglas_unit_cost(v, w, alpha);
                c.near(techcost::unit_cost(s), closed, 1e-8 * closed, "unit cost");
            }
        }
    }
    const techcost::TechSchedule s{1.3, 0.8, 0.4, techcost::ProgressPath(techcost::ProgressTable{{1.0, 2.0}})};
    for (double q : {0.5, 1.0, 7.0}) {
        c.require(techcost::total_cost(s, q, 1) == techcost::total_cost(s, q, 0) / 2.0,
                  "total cost not exactly halved when A doubles");
    }
    const double one = techcost::total_cost(s, 1.0, 1);
    for (double q : {0.001, 0.3, 2.0, 50.0, 1e4}) {
        c.near(techcost::total_cost(s, q, 1), q * one, 1e-12 * q * one, "output homogeneity");
    }
}

void rd_game(Check& c) {
    const auto game = rdgame::load_game(kData + "/rd_dilemma.game");
    const auto eq = rdgame::pure_nash(game);
    c.require(eq.size() == 1 && eq[0].rowChoice == "R&D" && eq[0].colChoice == "R&D",
              "pure Nash set is not {(R&D, R&D)}");
    const auto dom = rdgame::dominant_strategies(game);
    c.require(dom.row && game.row_strategies()[*dom.row] == "R&D", "row player lacks dominant R&D");
    c.require(dom.col && game.col_strategies()[*dom.col] == "R&D", "column player lacks dominant R&D");
    const auto pd = rdgame::classify_prisoners_dilemma(game);
    c.require(pd.isDilemma, "not classified as prisoner's dilemma");
    c.require(pd.equilibrium && pd.equilibrium->payoffs == rdgame::PayoffPair{50, 50}, "certificate equilibrium");
    c.require(pd.dominatedBy && pd.dominatedBy->payoffs == rdgame::PayoffPair{100, 100}, "certificate dominator");

    std::mt19937_64 rng(200);
    std::uniform_int_distribution<std::size_t> dim(2, 4);
    for (int g = 0; g < 200; ++g) {
        const auto t = oracle::random_tables(rng, dim(rng), dim(rng));
        std::vector<std::string> rows, cols;
        for (std::size_t r = 0; r < t.rowPay.size(); ++r) rows.push_back("r" + std::to_string(r));
        for (std::size_t k = 0; k < t.rowPay.front().size(); ++k) cols.push_back("c" + std::to_string(k));
        std::vector<std::vector<rdgame::PayoffPair>> pay(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t k = 0; k < cols.size(); ++k) pay[r].push_back({t.rowPay[r][k], t.colPay[r][k]});
        std::set<std::pair<std::size_t, std::size_t>> got;
        for (const auto& p : rdgame::pure_nash(rdgame::BimatrixGame(rows, cols, pay)))
            got.insert({p.rowIndex, p.colIndex});
        c.require(got == oracle::brute_force_nash(t), "random game " + std::to_string(g) + " disagrees");
    }
}

void simulator(Check& c) {
    const auto cfg = cyclesim::load_config(kData + "/dilemma_cycle.cfg");
    c.require(cfg.numCycles == 5, "bundled config is not 5 cycles");
    const auto traj = cyclesim::run(cfg);
    c.require(traj.cycles.size() == 5, "trajectory length");
    for (const auto& r : traj.cycles) {
        const std::string tag = "cycle " + std::to_string(r.cycle);
        const double a = std::pow(2.0, static_cast<double>(r.cycle));
        c.near(r.phase1ProfitA, 1.0, 1e-12, tag + " phase-1 profit A");
        c.near(r.phase1ProfitB, 1.0, 1e-12, tag + " phase-1 profit B");
        c.require(r.choiceA == "R&D" && r.choiceB == "R&D", tag + " choices");
        c.near(r.phase2GrossA, 0.5, 1e-12, tag + " phase-2 gross A");
        c.near(r.phase2GrossB, 0.5, 1e-12, tag + " phase-2 gross B");
        c.near(r.costPaidA, 0.2 / a, 1e-15, tag + " cost paid A");
        c.near(r.costPaidB, 0.2 / a, 1e-15, tag + " cost paid B");
        c.require(r.netProfitA == r.phase2GrossA - r.costPaidA, tag + " net A");
        c.require(r.netProfitB == r.phase2GrossB - r.costPaidB, tag + " net B");
        c.require(r.differentiation == 1.0, tag + " differentiation");
    }
    for (const auto& s : cyclesim::decompose(traj)) {
        c.require(s.dT == -s.dC + s.dD, "dT = -dC + dD identity");
    }

    const std::vector<std::string> args{"simulate", "--config", kData + "/dilemma_cycle.cfg"};
    std::ostringstream out1, out2, err;
    const int s1 = cli::dispatch(args, out1, err);
    const int s2 = cli::dispatch(args, out2, err);
    c.require(s1 == 0 && s2 == 0, "simulate command failed: " + err.str());
    c.require(!out1.str().empty() && out1.str() == out2.str(), "rerun output differs");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"1 cournot closed form and best-response iteration", cournot_closed_form},
        {"2 hotelling maximal differentiation prices and profits", hotelling_maximal_differentiation},
        {"3 FOC residuals and numeric price equilibria on 9x9 grid", foc_residuals_and_numeric_prices},
        {"4 market clearing and indifference on 1000 random configurations", split_invariants},
        {"5 location gradients negative; symmetric value -0.3", gradient_property},
        {"6 audit polynomial is a square; dE/dlocA = 1/6", sign_audit},
        {"7 unit cost minimizer, 1/A scaling, output homogeneity", cost_module},
        {"8 R&D game equilibrium, dominance, dilemma, random games", rd_game},
        {"9 five-cycle simulation, identity, reproducibility", simulator},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Check check;
        try {
            fn(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        if (check.passed()) {
            std::printf("PASS  %s\n", name.c_str());
        } else {
            ++failed;
            std::printf("FAIL  %s -- %s\n", name.c_str(), check.failure().c_str());
        }
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
