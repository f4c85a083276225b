#pragma once

// Cost side of technical progress: CRS unit-cost minimization and the
// 1/A(t) scaling of the cost function.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "duopoly/error.hpp"

namespace duopoly::techcost {

/// A(t) = (1 + rate)^t.
struct GeometricGrowth {
    double rate = 0.0;
};

/// A(t) = factors[t]; factors[0] must be 1.
struct ProgressTable {
    std::vector<double> factors{1.0};
};

class ProgressPath {
public:
    ProgressPath() : rule_(GeometricGrowth{}) {}
    ProgressPath(GeometricGrowth g) : rule_(g) { validate(); }
    ProgressPath(ProgressTable t) : rule_(std::move(t)) { validate(); }

    double factor(std::size_t t) const {
        if (const auto* g = std::get_if<GeometricGrowth>(&rule_)) {
            return std::pow(1.0 + g->rate, static_cast<double>(t));
        }
        const auto& table = std::get<ProgressTable>(rule_).factors;
        if (t >= table.size()) {
            throw InvalidArgument("techcost: progress table has no entry for period " + std::to_string(t));
        }
        return table[t];
    }

    /// Number of periods a table covers; growth rules are unbounded.
    std::optional<std::size_t> horizon() const {
        if (const auto* t = std::get_if<ProgressTable>(&rule_)) {
            return t->factors.size();
        }
        return std::nullopt;
    }

    const std::variant<GeometricGrowth, ProgressTable>& rule() const { return rule_; }

private:
    void validate() const {
        if (const auto* g = std::get_if<GeometricGrowth>(&rule_)) {
            if (!(g->rate >= 0.0) || !std::isfinite(g->rate)) {
                throw InvalidArgument("techcost: growth rate must be finite and >= 0");
            }
            return;
        }
        const auto& f = std::get<ProgressTable>(rule_).factors;
        if (f.empty() || f.front() != 1.0) {
            throw InvalidArgument("techcost: progress table must start with A(0) = 1");
        }
        for (std::size_t i = 1; i < f.size(); ++i) {
            if (!(f[i] >= f[i - 1]) || !std::isfinite(f[i])) {
                throw InvalidArgument("techcost: progress table must be finite and non-decreasing");
            }
        }
    }

    std::variant<GeometricGrowth, ProgressTable> rule_;
};

struct TechSchedule {
    double capitalRate = 1.0;  // v
    double wage = 1.0;         // w
    double alpha = 0.5;        // capital share of f(k, l) = k^alpha l^(1 - alpha)
    ProgressPath progress;
};

inline void validate(const TechSchedule& s) {
    if (!(s.capitalRate > 0.0) || !std::isfinite(s.capitalRate)) {
        throw InvalidArgument("techcost: capital rental rate v must be finite and > 0");
    }
    if (!(s.wage > 0.0) || !std::isfinite(s.wage)) {
        throw InvalidArgument("techcost: wage w must be finite and > 0");
    }
    if (!(s.alpha > 0.0 && s.alpha < 1.0)) {
        throw InvalidArgument("techcost: alpha must lie in (0, 1)");
    }
}

/// Closed-form Cobb-Douglas unit cost (v/alpha)^alpha (w/(1-alpha))^(1-alpha).
inline double cobb_douglas_unit_cost(double v, double w, double alpha) {
    return std::pow(v / alpha, alpha) * std::pow(w / (1.0 - alpha), 1.0 - alpha);
}

struct MinimizerOptions {
    double tolerance = 1e-12;  // bracket width in log(k)
    int maxWidenings = 200;
    int maxIterations = 500;
};

/// Golden-section minimization of a unimodal function. The initial bracket
/// [lo, hi] is widened geometrically until the interior probe beats both ends.
template <typename F>
double golden_section_minimize(F&& f, double lo, double hi, const MinimizerOptions& opts = {}) {
    double mid = 0.5 * (lo + hi);
    double fLo = f(lo), fMid = f(mid), fHi = f(hi);
    for (int i = 0; fLo < fMid || fHi < fMid; ++i) {
        if (i == opts.maxWidenings) {
            throw NonConvergence("techcost: could not bracket the minimum", i);
        }
        const double width = hi - lo;
        if (fLo < fMid) {
            hi = mid;
            fHi = fMid;
            mid = lo;
            fMid = fLo;
            lo -= width;
            fLo = f(lo);
        } else {
            lo = mid;
            fLo = fMid;
            mid = hi;
            fMid = fHi;
            hi += width;
            fHi = f(hi);
        }
    }

    const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invPhi * (hi - lo);
    double d = lo + invPhi * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; hi - lo > opts.tolerance; ++it) {
        if (it == opts.maxIterations) {
            throw NonConvergence("techcost: golden-section search did not converge", it);
        }
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invPhi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invPhi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

/// Minimized cost of producing one unit, min v k + w l s.t. k^alpha l^(1-alpha) = 1,
/// searched numerically over u = log(k) with l eliminated through the constraint.
inline double unit_cost(const TechSchedule& s, const MinimizerOptions& opts = {}) {
    validate(s);
    const double v = s.capitalRate, w = s.wage, alpha = s.alpha;
    const double laborExponent = -alpha / (1.0 - alpha);  // l = k^laborExponent on f = 1
    auto cost = [&](double u) { return v * std::exp(u) + w * std::exp(laborExponent * u); };
    const double u = golden_section_minimize(cost, -1.0, 1.0, opts);
    return cost(u);
}

inline double progress_factor(const TechSchedule& s, std::size_t t) { return s.progress.factor(t); }

/// C_t(v, w, q) = q C_0(v, w, 1) / A(t).
inline double total_cost(const TechSchedule& s, double q, std::size_t t) {
    if (!(q >= 0.0)) {
        throw InvalidArgument("techcost: output q must be >= 0");
    }
    const double a = progress_factor(s, t);
    return q * unit_cost(s) / a;
}

/// True iff producing q at period t is strictly cheaper than at period 0.
inline bool cost_decline_check(const TechSchedule& s, double q, std::size_t t) {
    if (!(q > 0.0)) {
        throw InvalidArgument("techcost: cost decline check needs q > 0");
    }
    return total_cost(s, q, t) < total_cost(s, q, 0);
}

}  // namespace duopoly::techcost
