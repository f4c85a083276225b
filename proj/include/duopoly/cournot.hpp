#pragma once

/**
 * Homogeneous-product stage of the duopoly cycle.
 *
 * Two firms with zero marginal cost face the inverse demand
 * p = cap - (qA + qB). The stage game is solved in closed form
 * (qA = qB = cap/3) and, independently, by simultaneous best-response
 * iteration, which must land on the same fixed point.
 */

#include <algorithm>
#include <cmath>
#include <utility>

#include "duopoly/error.hpp"

namespace duopoly::cournot {

struct CournotMarket {
    double cap = 0.0;  // demand intercept
};

struct CournotOutcome {
    double qA = 0.0;
    double qB = 0.0;
    double price = 0.0;
    double profitA = 0.0;
    double profitB = 0.0;
};

enum class Method { ClosedForm, Iterate };

struct IterationOptions {
    double startA = 0.0;
    double startB = 0.0;
    double tolerance = 1e-12;  // max-norm change between successive pairs
    int maxIterations = 10'000;
};

inline void validate(const CournotMarket& market) {
    if (!(market.cap >= 0.0) || !std::isfinite(market.cap)) {
        throw InvalidArgument("cournot: demand intercept must be finite and >= 0");
    }
}

/// Profit pair at arbitrary quantities. Price may go negative off equilibrium.
inline std::pair<double, double> profits(const CournotMarket& market, double qA, double qB) {
    if (qA < 0.0 || qB < 0.0) {
        throw InvalidArgument("cournot: quantities must be >= 0");
    }
    const double price = market.cap - qA - qB;
    return {price * qA, price * qB};
}

/// Profit-maximizing reply to a rival quantity, clamped at zero output.
inline double best_response(const CournotMarket& market, double qRival) {
    if (qRival < 0.0) {
        throw InvalidArgument("cournot: rival quantity must be >= 0");
    }
    return std::max(0.0, (market.cap - qRival) / 2.0);
}

namespace detail {

inline CournotOutcome make_outcome(const CournotMarket& market, double qA, double qB) {
    CournotOutcome out;
    out.qA = qA;
    out.qB = qB;
    out.price = market.cap - qA - qB;
    out.profitA = out.price * qA;
    out.profitB = out.price * qB;
    return out;
}

}  // namespace detail

inline CournotOutcome closed_form_equilibrium(const CournotMarket& market) {
    validate(market);
    const double q = market.cap / 3.0;
    CournotOutcome out = detail::make_outcome(market, q, q);
    // Pin profits to cap^2/9 rather than accumulating rounding through price.
    out.profitA = out.profitB = market.cap * market.cap / 9.0;
    return out;
}

/// Jacobi best-response iteration: both firms update from the previous pair.
inline CournotOutcome iterate_equilibrium(const CournotMarket& market,
                                          const IterationOptions& opts = {}) {
    validate(market);
    if (opts.startA < 0.0 || opts.startB < 0.0) {
        throw InvalidArgument("cournot: starting quantities must be >= 0");
    }
    double qA = opts.startA;
    double qB = opts.startB;
    for (int it = 1; it <= opts.maxIterations; ++it) {
        const double nextA = best_response(market, qB);
        const double nextB = best_response(market, qA);
        const double change = std::max(std::abs(nextA - qA), std::abs(nextB - qB));
        qA = nextA;
        qB = nextB;
        if (change < opts.tolerance) {
            return detail::make_outcome(market, qA, qB);
        }
    }
    throw NonConvergence("cournot: best-response iteration did not converge",
                         opts.maxIterations);
}

inline CournotOutcome equilibrium(const CournotMarket& market,
                                  Method method = Method::ClosedForm,
                                  const IterationOptions& opts = {}) {
    return method == Method::ClosedForm ? closed_form_equilibrium(market)
                                        : iterate_equilibrium(market, opts);
}

}  // namespace duopoly::cournot
