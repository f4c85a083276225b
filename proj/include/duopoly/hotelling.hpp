#pragma once

/**
 * Differentiated-product stage: Hotelling line with quadratic disutility.
 *
 * Consumers are spread uniformly over [0, length] and buy one unit from the
 * firm minimizing price + disutility * distance^2. Firm A sits locA from the
 * left end, firm B sits locB from the right end. Everything here is a pure
 * function of (market, locations, prices).
 *
 * Coordinates:
 *
 *     0 ---- A ------ x ------ E ---- y ---- B ---- length
 *     |<locA>|                              |<locB>|
 *
 * E is the indifferent consumer, x and y its distances to A and B.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duopoly/error.hpp"

namespace duopoly::hotelling {

struct LinearMarket {
    double length = 1.0;      // L
    double disutility = 1.0;  // c, cost per squared distance
};

struct Locations {
    double locA = 0.0;  // from the left endpoint to A
    double locB = 0.0;  // from the right endpoint to B
};

struct PricePair {
    double pA = 0.0;
    double pB = 0.0;
};

struct Split {
    double x = 0.0;
    double y = 0.0;
};

struct HotellingOutcome {
    PricePair prices;
    double x = 0.0;
    double y = 0.0;
    double demandA = 0.0;
    double demandB = 0.0;
    double profitA = 0.0;
    double profitB = 0.0;
    double eShare = 0.0;  // A's equilibrium demand, closed form
};

enum class Method { ClosedForm, Numeric };

struct SolverOptions {
    double tolerance = 1e-12;
    int maxIterations = 10'000;
};

inline void validate(const LinearMarket& market) {
    if (!(market.length > 0.0) || !std::isfinite(market.length)) {
        throw InvalidArgument("hotelling: length must be finite and > 0");
    }
    if (!(market.disutility > 0.0) || !std::isfinite(market.disutility)) {
        throw InvalidArgument("hotelling: disutility must be finite and > 0");
    }
}

inline bool valid_locations(const LinearMarket& market, const Locations& locs) {
    return locs.locA >= 0.0 && locs.locB >= 0.0 && locs.locA + locs.locB < market.length;
}

inline void validate(const LinearMarket& market, const Locations& locs) {
    validate(market);
    if (!valid_locations(market, locs)) {
        throw InvalidLocations("hotelling: need locA >= 0, locB >= 0 and locA + locB < length (got locA=" +
                               std::to_string(locs.locA) + ", locB=" + std::to_string(locs.locB) + ")");
    }
}

inline void validate(const PricePair& prices) {
    if (!(prices.pA >= 0.0) || !(prices.pB >= 0.0)) {
        throw InvalidArgument("hotelling: prices must be >= 0");
    }
}

/// Distance between the two firms.
inline double gap(const LinearMarket& market, const Locations& locs) {
    return market.length - locs.locA - locs.locB;
}

/// The polynomial L^2 + a^2 + 2ab - 2bL - 2aL + b^2 used in the sign audit.
/// Algebraically (L - a - b)^2, evaluated in expanded form.
inline double audit_polynomial(double length, double locA, double locB) {
    const double L = length, a = locA, b = locB;
    return L * L + a * a + 2.0 * a * b - 2.0 * b * L - 2.0 * a * L + b * b;
}

/// Indifferent-consumer distances for posted prices.
/// Throws OutOfInterior when either distance is negative.
inline Split split(const LinearMarket& market, const Locations& locs, const PricePair& prices) {
    validate(market, locs);
    validate(prices);
    const double L = market.length, c = market.disutility;
    const double a = locs.locA, b = locs.locB;
    const double s = gap(market, locs);
    const double poly = audit_polynomial(L, a, b);
    Split out;
    out.x = (prices.pB - prices.pA) / (2.0 * c * s) + poly / (2.0 * s);
    out.y = (prices.pA - prices.pB) / (2.0 * c * s) + poly / (2.0 * s);
    if (out.x < 0.0 || out.y < 0.0) {
        throw OutOfInterior("hotelling: indifferent consumer outside the firms (x=" +
                            std::to_string(out.x) + ", y=" + std::to_string(out.y) + ")");
    }
    return out;
}

/// Revenue of each firm at posted prices (marginal cost is zero).
inline std::pair<double, double> stage_profits(const LinearMarket& market, const Locations& locs,
                                               const PricePair& prices) {
    const Split s = split(market, locs, prices);
    return {prices.pA * (locs.locA + s.x), prices.pB * (locs.locB + s.y)};
}

/// d(profitA)/d(pA) and d(profitB)/d(pB) from the interior profit functions.
inline std::pair<double, double> foc_residuals(const LinearMarket& market, const Locations& locs,
                                               const PricePair& prices) {
    validate(market, locs);
    const double L = market.length, c = market.disutility;
    const double a = locs.locA, b = locs.locB;
    const double s = gap(market, locs);
    const double rA = (prices.pB - 2.0 * prices.pA) / (2.0 * c * s) +
                      (L * L - a * a + b * b - 2.0 * b * L) / (2.0 * s);
    const double rB = (prices.pA - 2.0 * prices.pB) / (2.0 * c * s) +
                      (L * L + a * a - b * b - 2.0 * a * L) / (2.0 * s);
    return {rA, rB};
}

inline PricePair closed_form_prices(const LinearMarket& market, const Locations& locs) {
    validate(market, locs);
    const double L = market.length, c = market.disutility;
    const double a = locs.locA, b = locs.locB;
    return {c / 3.0 * (3.0 * L * L - a * a + b * b - 2.0 * a * L - 4.0 * b * L),
            c / 3.0 * (3.0 * L * L + a * a - b * b - 4.0 * a * L - 2.0 * b * L)};
}

namespace detail {

// Root of a residual that is affine in its argument, from two evaluations.
template <typename F>
double affine_root(F&& residual) {
    const double r0 = residual(0.0);
    const double r1 = residual(1.0);
    return -r0 / (r1 - r0);
}

}  // namespace detail

/// Alternating best response in prices. Each step zeroes one firm's first-order
/// condition given the rival's current price; the FOCs are affine in own price
/// so each inner solve is exact.
inline PricePair numeric_prices(const LinearMarket& market, const Locations& locs,
                                const SolverOptions& opts = {}) {
    validate(market, locs);
    // Absolute tolerance on the scale of the maximal-differentiation price c L^2.
    const double scale = std::max(1.0, market.disutility * market.length * market.length);
    PricePair p{0.0, 0.0};
    for (int it = 1; it <= opts.maxIterations; ++it) {
        const PricePair prev = p;
        p.pA = detail::affine_root(
            [&](double own) { return foc_residuals(market, locs, {own, p.pB}).first; });
        p.pB = detail::affine_root(
            [&](double own) { return foc_residuals(market, locs, {p.pA, own}).second; });
        const double change = std::max(std::abs(p.pA - prev.pA), std::abs(p.pB - prev.pB));
        if (change < opts.tolerance * scale) {
            return p;
        }
    }
    throw NonConvergence("hotelling: price best-response iteration did not converge",
                         opts.maxIterations);
}

inline PricePair price_equilibrium(const LinearMarket& market, const Locations& locs,
                                   Method method = Method::ClosedForm,
                                   const SolverOptions& opts = {}) {
    return method == Method::ClosedForm ? closed_form_prices(market, locs)
                                        : numeric_prices(market, locs, opts);
}

/// A's equilibrium demand in closed form, E = (3L^2 - a^2 + b^2 - 2aL - 4bL) / (6(L - a - b)).
inline double equilibrium_share(const LinearMarket& market, const Locations& locs) {
    const double L = market.length, a = locs.locA, b = locs.locB;
    return (-a * a + b * b - 2.0 * a * L - 4.0 * b * L + 3.0 * L * L) / (6.0 * gap(market, locs));
}

inline HotellingOutcome outcome_at(const LinearMarket& market, const Locations& locs,
                                   const PricePair& prices) {
    const Split s = split(market, locs, prices);
    HotellingOutcome out;
    out.prices = prices;
    out.x = s.x;
    out.y = s.y;
    out.demandA = locs.locA + s.x;
    out.demandB = locs.locB + s.y;
    out.profitA = prices.pA * out.demandA;
    out.profitB = prices.pB * out.demandB;
    out.eShare = equilibrium_share(market, locs);
    return out;
}

inline HotellingOutcome equilibrium_outcome(const LinearMarket& market, const Locations& locs,
                                            Method method = Method::ClosedForm) {
    return outcome_at(market, locs, price_equilibrium(market, locs, method));
}

struct LocationGradient {
    double dProfitA_dLocA = 0.0;
    double dProfitB_dLocB = 0.0;
};

namespace detail {

// Central difference in one firm's own location, forward at the endpoint.
template <typename F>
double own_location_derivative(const LinearMarket& market, const Locations& locs, double step,
                               bool firmA, F&& value) {
    const double own = firmA ? locs.locA : locs.locB;
    auto shifted = [&](double delta) {
        Locations moved = locs;
        (firmA ? moved.locA : moved.locB) += delta;
        if (!valid_locations(market, moved)) {
            throw InvalidArgument("hotelling: finite-difference step " + std::to_string(step) +
                                  " leaves the valid location region");
        }
        return value(moved);
    };
    if (own == 0.0) {
        return (shifted(step) - value(locs)) / step;
    }
    return (shifted(step) - shifted(-step)) / (2.0 * step);
}

}  // namespace detail

inline double default_step(const LinearMarket& market) { return 1e-5 * market.length; }

/// Finite-difference gradient of each firm's equilibrium profit in its own location.
inline LocationGradient location_gradient(const LinearMarket& market, const Locations& locs,
                                          std::optional<double> step = std::nullopt) {
    validate(market, locs);
    const double h = step.value_or(default_step(market));
    if (!(h > 0.0)) {
        throw InvalidArgument("hotelling: finite-difference step must be > 0");
    }
    LocationGradient g;
    g.dProfitA_dLocA = detail::own_location_derivative(
        market, locs, h, true, [&](const Locations& l) { return equilibrium_outcome(market, l).profitA; });
    g.dProfitB_dLocB = detail::own_location_derivative(
        market, locs, h, false, [&](const Locations& l) { return equilibrium_outcome(market, l).profitB; });
    return g;
}

struct SignAudit {
    double F = 0.0;
    // Unset when the firms coincide (locA + locB == length) and E is undefined.
    std::optional<double> dEShare_dLocA;
};

/// Evaluates the audit polynomial F and the finite-difference slope of E in locA.
/// Accepts the boundary locA + locB == length, where only F is defined.
inline SignAudit diagnostics_F_dE(const LinearMarket& market, const Locations& locs,
                                  std::optional<double> step = std::nullopt) {
    validate(market);
    if (locs.locA < 0.0 || locs.locB < 0.0 || locs.locA + locs.locB > market.length) {
        throw InvalidLocations("hotelling: audit needs locA, locB >= 0 and locA + locB <= length");
    }
    SignAudit audit;
    audit.F = audit_polynomial(market.length, locs.locA, locs.locB);
    if (valid_locations(market, locs)) {
        const double h = step.value_or(default_step(market));
        if (!(h > 0.0)) {
            throw InvalidArgument("hotelling: finite-difference step must be > 0");
        }
        audit.dEShare_dLocA = detail::own_location_derivative(
            market, locs, h, true, [&](const Locations& l) { return equilibrium_share(market, l); });
    }
    return audit;
}

/// Evenly spaced points lo, ..., hi (count >= 1; a single point sits at lo).
struct AxisGrid {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 1;

    double at(std::size_t i) const {
        return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

struct SweepRow {
    Locations locs;
    PricePair prices;
    double profitA = 0.0;
    double profitB = 0.0;
    double F = 0.0;
    double dEShare_dLocA = 0.0;
    LocationGradient gradient;
};

/// Equilibrium, audit and gradient values over a locA x locB grid. Grid points
/// outside the valid region (locA + locB >= length) are skipped.
inline std::vector<SweepRow> sweep(const LinearMarket& market, const AxisGrid& gridA, const AxisGrid& gridB,
                                   std::optional<double> step = std::nullopt) {
    validate(market);
    if (gridA.count < 1 || gridB.count < 1) {
        throw InvalidArgument("hotelling: sweep grids need at least one point");
    }
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < gridA.count; ++i) {
        for (std::size_t j = 0; j < gridB.count; ++j) {
            const Locations locs{gridA.at(i), gridB.at(j)};
            if (!valid_locations(market, locs)) continue;
            const HotellingOutcome eq = equilibrium_outcome(market, locs);
            const SignAudit audit = diagnostics_F_dE(market, locs, step);
            SweepRow row;
            row.locs = locs;
            row.prices = eq.prices;
            row.profitA = eq.profitA;
            row.profitB = eq.profitB;
            row.F = audit.F;
            row.dEShare_dLocA = audit.dEShare_dLocA.value();
            row.gradient = location_gradient(market, locs, step);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace duopoly::hotelling
