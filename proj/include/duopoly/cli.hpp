#pragma once

/**
 * Command-line front end. dispatch() takes the arguments after the program
 * name and writes results to `out` (or --output), diagnostics to `err`.
 *
 *   cournot   --cap X [--method closed|iterate]
 *   hotelling prices --L X --c X --locA X --locB X [--method closed|numeric]
 *   hotelling sweep  [--grid SPEC] [--L X] [--c X] [--step H]
 *   cost      --v X --w X --alpha X --q X --A X
 *   rdgame    --file PATH
 *   simulate  --config PATH
 *
 * Every subcommand takes --format json|csv and --output PATH. JSON is the
 * default except for sweeps, which default to CSV.
 *
 * Grid SPEC is "lo:hi:n" for both axes or "lo:hi:n,lo:hi:n" for locA, locB.
 */

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "duopoly/cournot.hpp"
#include "duopoly/cyclesim.hpp"
#include "duopoly/error.hpp"
#include "duopoly/hotelling.hpp"
#include "duopoly/parse.hpp"
#include "duopoly/rdgame.hpp"
#include "duopoly/report.hpp"
#include "duopoly/techcost.hpp"

namespace duopoly::cli {

enum class Format { Json, Csv };

struct OutputEnvelope {
    Format format = Format::Json;
    std::optional<std::string> destination;  // stdout when empty
    std::string payload;
};

inline std::string render(const report::json& j) { return j.dump(2) + "\n"; }

inline void emit(const OutputEnvelope& env, std::ostream& out) {
    if (!env.destination) {
        out << env.payload;
        return;
    }
    std::ofstream file(*env.destination, std::ios::binary);
    if (!file) {
        throw Error("cannot write '" + *env.destination + "'");
    }
    file << env.payload;
}

inline std::pair<hotelling::AxisGrid, hotelling::AxisGrid> parse_grid(const std::string& spec) {
    auto axis = [](std::string_view text) {
        const auto c1 = text.find(':');
        const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
        if (c2 == std::string_view::npos) {
            throw InvalidArgument("grid axis '" + std::string(text) + "' is not lo:hi:n");
        }
        hotelling::AxisGrid g;
        g.lo = detail::parse_double(text.substr(0, c1), "grid lo");
        g.hi = detail::parse_double(text.substr(c1 + 1, c2 - c1 - 1), "grid hi");
        const long long n = detail::parse_integer(text.substr(c2 + 1), "grid count");
        if (n < 1) throw InvalidArgument("grid count must be >= 1");
        g.count = static_cast<std::size_t>(n);
        return g;
    };
    const auto comma = spec.find(',');
    if (comma == std::string::npos) {
        const auto g = axis(spec);
        return {g, g};
    }
    return {axis(std::string_view(spec).substr(0, comma)), axis(std::string_view(spec).substr(comma + 1))};
}

namespace detail {

struct CommonFlags {
    std::string format;
    std::string output;

    void attach(CLI::App* cmd, std::string defaultFormat) {
        format = std::move(defaultFormat);
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        cmd->add_option("--output", output, "Write to this file instead of standard output");
    }

    OutputEnvelope envelope(std::string jsonPayload, std::string csvPayload) const {
        OutputEnvelope env;
        env.format = format == "csv" ? Format::Csv : Format::Json;
        if (!output.empty()) env.destination = output;
        env.payload = env.format == Format::Csv ? std::move(csvPayload) : std::move(jsonPayload);
        return env;
    }
};

}  // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Duopoly cycle solver: Cournot, Hotelling, technical-progress cost and R&D game",
                 "duopoly"};
    app.require_subcommand(1);

    std::optional<OutputEnvelope> result;

    // cournot
    auto* cournotCmd = app.add_subcommand("cournot", "Homogeneous-product Cournot equilibrium");
    double cap = 0.0;
    std::string cournotMethod = "closed";
    detail::CommonFlags cournotFlags;
    cournotCmd->add_option("--cap", cap, "Demand intercept")->required();
    cournotCmd->add_option("--method", cournotMethod)
        ->check(CLI::IsMember({"closed", "iterate"}))
        ->capture_default_str();
    cournotFlags.attach(cournotCmd, "json");
    cournotCmd->callback([&] {
        const cournot::CournotMarket market{cap};
        const auto o = cournot::equilibrium(
            market, cournotMethod == "closed" ? cournot::Method::ClosedForm : cournot::Method::Iterate);
        auto j = report::to_json(cap, o);
        j["method"] = cournotMethod;
        result = cournotFlags.envelope(render(j), report::cournot_csv(cap, o));
    });

    // hotelling
    auto* hotellingCmd = app.add_subcommand("hotelling", "Differentiated-product Hotelling stage");
    hotellingCmd->require_subcommand(1);

    auto* pricesCmd = hotellingCmd->add_subcommand("prices", "Equilibrium prices and outcome at given locations");
    hotelling::LinearMarket pricesMarket;
    hotelling::Locations pricesLocs;
    std::string pricesMethod = "closed";
    detail::CommonFlags pricesFlags;
    pricesCmd->add_option("--L", pricesMarket.length, "Line length")->required();
    pricesCmd->add_option("--c", pricesMarket.disutility, "Disutility coefficient")->required();
    pricesCmd->add_option("--locA", pricesLocs.locA, "Distance of A from the left end")->required();
    pricesCmd->add_option("--locB", pricesLocs.locB, "Distance of B from the right end")->required();
    pricesCmd->add_option("--method", pricesMethod)
        ->check(CLI::IsMember({"closed", "numeric"}))
        ->capture_default_str();
    pricesFlags.attach(pricesCmd, "json");
    pricesCmd->callback([&] {
        const auto method = pricesMethod == "closed" ? hotelling::Method::ClosedForm : hotelling::Method::Numeric;
        const auto o = hotelling::equilibrium_outcome(pricesMarket, pricesLocs, method);
        auto j = report::to_json(pricesMarket, pricesLocs, o);
        j["method"] = pricesMethod;
        result = pricesFlags.envelope(render(j), report::hotelling_csv(pricesMarket, pricesLocs, o));
    });

    auto* sweepCmd = hotellingCmd->add_subcommand("sweep", "Prices, audit values and location gradients over a grid");
    hotelling::LinearMarket sweepMarket;
    std::string gridSpec = "0:0.4:9";
    std::optional<double> sweepStep;
    detail::CommonFlags sweepFlags;
    sweepCmd->add_option("--grid", gridSpec, "lo:hi:n or lo:hi:n,lo:hi:n")->capture_default_str();
    sweepCmd->add_option("--L", sweepMarket.length, "Line length")->capture_default_str();
    sweepCmd->add_option("--c", sweepMarket.disutility, "Disutility coefficient")->capture_default_str();
    sweepCmd->add_option("--step", sweepStep, "Finite-difference step (default 1e-5 L)");
    sweepFlags.attach(sweepCmd, "csv");
    sweepCmd->callback([&] {
        const auto [gridA, gridB] = parse_grid(gridSpec);
        const auto rows = hotelling::sweep(sweepMarket, gridA, gridB, sweepStep);
        result = sweepFlags.envelope(render(report::sweep_json(rows)), report::sweep_csv(rows));
    });

    // cost
    auto* costCmd = app.add_subcommand("cost", "Unit and total cost under technical progress");
    techcost::TechSchedule sched;
    double q = 0.0;
    double progress = 1.0;
    detail::CommonFlags costFlags;
    costCmd->add_option("--v", sched.capitalRate, "Capital rental rate")->required();
    costCmd->add_option("--w", sched.wage, "Wage")->required();
    costCmd->add_option("--alpha", sched.alpha, "Capital share in (0, 1)")->required();
    costCmd->add_option("--q", q, "Output")->required();
    costCmd->add_option("--A", progress, "Progress factor A(t) >= 1")->required();
    costFlags.attach(costCmd, "json");
    costCmd->callback([&] {
        if (!(progress >= 1.0)) throw InvalidArgument("cost: --A must be >= 1");
        sched.progress = techcost::ProgressPath(techcost::ProgressTable{{1.0, progress}});
        const double unit = techcost::unit_cost(sched);
        const double closed = techcost::cobb_douglas_unit_cost(sched.capitalRate, sched.wage, sched.alpha);
        const double base = techcost::total_cost(sched, q, 0);
        const double now = techcost::total_cost(sched, q, 1);
        const bool declined = q > 0.0 && techcost::cost_decline_check(sched, q, 1);
        report::json j = {{"v", report::round_sig(sched.capitalRate)},
                          {"w", report::round_sig(sched.wage)},
                          {"alpha", report::round_sig(sched.alpha)},
                          {"q", report::round_sig(q)},
                          {"A", report::round_sig(progress)},
                          {"unit_cost", report::round_sig(unit)},
                          {"unit_cost_closed_form", report::round_sig(closed)},
                          {"total_cost_initial", report::round_sig(base)},
                          {"total_cost", report::round_sig(now)},
                          {"cost_declined", declined}};
        std::string csv = "v,w,alpha,q,A,unit_cost,unit_cost_closed_form,total_cost_initial,total_cost,cost_declined\n";
        for (double v : {sched.capitalRate, sched.wage, sched.alpha, q, progress, unit, closed, base, now}) {
            csv += report::format_number(v) + ',';
        }
        csv += declined ? "true\n" : "false\n";
        result = costFlags.envelope(render(j), csv);
    });

    // rdgame
    auto* gameCmd = app.add_subcommand("rdgame", "Pure equilibria, dominance and dilemma test of a bimatrix game");
    std::string gamePath;
    detail::CommonFlags gameFlags;
    gameCmd->add_option("--file", gamePath, "Game file")->required();
    gameFlags.attach(gameCmd, "json");
    gameCmd->callback([&] {
        const auto game = rdgame::load_game(gamePath);
        result = gameFlags.envelope(render(report::game_report(game)), report::game_csv(game));
    });

    // simulate
    auto* simCmd = app.add_subcommand("simulate", "Run the periodic duopoly game");
    std::string configPath;
    detail::CommonFlags simFlags;
    simCmd->add_option("--config", configPath, "Cycle configuration file")->required();
    simFlags.attach(simCmd, "json");
    simCmd->callback([&] {
        const auto traj = cyclesim::run(cyclesim::load_config(configPath));
        result = simFlags.envelope(render(report::trajectory_json(traj)), report::trajectory_csv(traj));
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (result) emit(*result, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace duopoly::cli
