#pragma once

/**
 * Two-player finite game in bimatrix form, with the pure-strategy analyses
 * the R&D stage needs: equilibrium enumeration, strict dominance and the
 * prisoner's-dilemma test.
 *
 * Game file format (whitespace separated, '#' starts a comment):
 *
 *     R&D NoR&D            <- row strategy labels
 *     R&D NoR&D            <- column strategy labels
 *     50,50   200,0        <- one line per row: "rowPayoff,colPayoff" per column
 *     0,200   100,100
 */

#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "duopoly/error.hpp"
#include "duopoly/parse.hpp"

namespace duopoly::rdgame {

struct PayoffPair {
    double row = 0.0;
    double col = 0.0;

    friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

struct StrategyProfile {
    std::size_t rowIndex = 0;
    std::size_t colIndex = 0;
    std::string rowChoice;
    std::string colChoice;
    PayoffPair payoffs;

    friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

class BimatrixGame {
public:
    BimatrixGame(std::vector<std::string> rowStrategies, std::vector<std::string> colStrategies,
                 std::vector<std::vector<PayoffPair>> payoffs)
        : rows_(std::move(rowStrategies)), cols_(std::move(colStrategies)), payoffs_(std::move(payoffs)) {
        if (rows_.size() < 2 || cols_.size() < 2) {
            throw InvalidArgument("rdgame: each player needs at least two strategies");
        }
        if (payoffs_.size() != rows_.size()) {
            throw InvalidArgument("rdgame: payoff matrix has " + std::to_string(payoffs_.size()) +
                                  " rows, expected " + std::to_string(rows_.size()));
        }
        for (const auto& r : payoffs_) {
            if (r.size() != cols_.size()) {
                throw InvalidArgument("rdgame: payoff row has " + std::to_string(r.size()) +
                                      " entries, expected " + std::to_string(cols_.size()));
            }
        }
        check_unique(rows_, "row");
        check_unique(cols_, "column");
    }

    const std::vector<std::string>& row_strategies() const { return rows_; }
    const std::vector<std::string>& col_strategies() const { return cols_; }
    std::size_t num_rows() const { return rows_.size(); }
    std::size_t num_cols() const { return cols_.size(); }

    const PayoffPair& payoff(std::size_t r, std::size_t c) const { return payoffs_.at(r).at(c); }

    StrategyProfile profile(std::size_t r, std::size_t c) const {
        return {r, c, rows_.at(r), cols_.at(c), payoff(r, c)};
    }

    std::optional<std::size_t> row_index(std::string_view label) const { return find(rows_, label); }
    std::optional<std::size_t> col_index(std::string_view label) const { return find(cols_, label); }

private:
    static void check_unique(const std::vector<std::string>& labels, const char* who) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            for (std::size_t j = i + 1; j < labels.size(); ++j) {
                if (labels[i] == labels[j]) {
                    throw InvalidArgument(std::string("rdgame: duplicate ") + who + " strategy '" + labels[i] + "'");
                }
            }
        }
    }

    static std::optional<std::size_t> find(const std::vector<std::string>& labels, std::string_view label) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == label) return i;
        }
        return std::nullopt;
    }

    std::vector<std::string> rows_;
    std::vector<std::string> cols_;
    std::vector<std::vector<PayoffPair>> payoffs_;
};

/// Profiles where no player has a strictly improving unilateral deviation,
/// in row-major order.
inline std::vector<StrategyProfile> pure_nash(const BimatrixGame& game) {
    std::vector<StrategyProfile> out;
    for (std::size_t r = 0; r < game.num_rows(); ++r) {
        for (std::size_t c = 0; c < game.num_cols(); ++c) {
            const PayoffPair& here = game.payoff(r, c);
            bool stable = true;
            for (std::size_t r2 = 0; stable && r2 < game.num_rows(); ++r2) {
                stable = game.payoff(r2, c).row <= here.row;
            }
            for (std::size_t c2 = 0; stable && c2 < game.num_cols(); ++c2) {
                stable = game.payoff(r, c2).col <= here.col;
            }
            if (stable) out.push_back(game.profile(r, c));
        }
    }
    return out;
}

struct DominantStrategies {
    std::optional<std::size_t> row;
    std::optional<std::size_t> col;
};

/// A strategy is reported only if it strictly beats every alternative of the
/// same player against every opposing strategy.
inline DominantStrategies dominant_strategies(const BimatrixGame& game) {
    DominantStrategies out;
    for (std::size_t r = 0; r < game.num_rows() && !out.row; ++r) {
        bool dominant = true;
        for (std::size_t other = 0; dominant && other < game.num_rows(); ++other) {
            if (other == r) continue;
            for (std::size_t c = 0; dominant && c < game.num_cols(); ++c) {
                dominant = game.payoff(r, c).row > game.payoff(other, c).row;
            }
        }
        if (dominant) out.row = r;
    }
    for (std::size_t c = 0; c < game.num_cols() && !out.col; ++c) {
        bool dominant = true;
        for (std::size_t other = 0; dominant && other < game.num_cols(); ++other) {
            if (other == c) continue;
            for (std::size_t r = 0; dominant && r < game.num_rows(); ++r) {
                dominant = game.payoff(r, c).col > game.payoff(r, other).col;
            }
        }
        if (dominant) out.col = c;
    }
    return out;
}

struct DilemmaCertificate {
    bool isDilemma = false;
    std::optional<StrategyProfile> equilibrium;  // the dominant-strategy equilibrium, if any
    std::optional<StrategyProfile> dominatedBy;  // a profile strictly better for both players
};

inline DilemmaCertificate classify_prisoners_dilemma(const BimatrixGame& game) {
    if (game.num_rows() != 2 || game.num_cols() != 2) {
        throw InvalidArgument("rdgame: prisoner's dilemma classification needs a 2x2 game");
    }
    DilemmaCertificate cert;
    const DominantStrategies dom = dominant_strategies(game);
    if (!dom.row || !dom.col) {
        return cert;
    }
    cert.equilibrium = game.profile(*dom.row, *dom.col);
    const PayoffPair eq = cert.equilibrium->payoffs;
    for (std::size_t r = 0; r < 2 && !cert.dominatedBy; ++r) {
        for (std::size_t c = 0; c < 2 && !cert.dominatedBy; ++c) {
            const PayoffPair& p = game.payoff(r, c);
            if (p.row > eq.row && p.col > eq.col) {
                cert.dominatedBy = game.profile(r, c);
            }
        }
    }
    cert.isDilemma = cert.dominatedBy.has_value();
    return cert;
}

inline BimatrixGame parse_game(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        const std::string body = detail::trim(detail::strip_comment(line));
        if (body.empty()) continue;
        std::istringstream fields(body);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);
        lines.push_back(std::move(tokens));
    }
    if (lines.size() < 2) {
        throw ParseError("rdgame: game file needs row labels, column labels and payoff lines");
    }
    std::vector<std::string> rows = lines[0];
    std::vector<std::string> cols = lines[1];
    for (const auto* labels : {&rows, &cols}) {
        for (const auto& label : *labels) {
            if (label.find(',') != std::string::npos) {
                throw ParseError("rdgame: strategy label '" + label + "' contains a comma");
            }
        }
    }
    std::vector<std::vector<PayoffPair>> payoffs;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        std::vector<PayoffPair> row;
        for (const auto& cell : lines[i]) {
            const auto comma = cell.find(',');
            if (comma == std::string::npos || cell.find(',', comma + 1) != std::string::npos) {
                throw ParseError("rdgame: payoff cell '" + cell + "' is not of the form r,c");
            }
            row.push_back({detail::parse_double(cell.substr(0, comma), "row payoff"),
                           detail::parse_double(cell.substr(comma + 1), "column payoff")});
        }
        payoffs.push_back(std::move(row));
    }
    try {
        return BimatrixGame(std::move(rows), std::move(cols), std::move(payoffs));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

inline BimatrixGame parse_game(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_game(in);
}

inline BimatrixGame load_game(const std::string& path) {
    return parse_game(detail::read_file(path));
}

}  // namespace duopoly::rdgame
