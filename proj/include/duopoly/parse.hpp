#pragma once

// Small text helpers shared by the game and config readers.

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "duopoly/error.hpp"

namespace duopoly::detail {

inline std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

inline std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

inline double parse_double(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    double value = 0.0;
    const char* begin = t.data();
    const char* end = begin + t.size();
    if (!t.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (t.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ParseError("cannot read " + std::string(what) + " from '" + t + "'");
    }
    return value;
}

inline long long parse_integer(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ParseError("cannot read integer " + std::string(what) + " from '" + t + "'");
    }
    return value;
}

inline std::vector<double> parse_double_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_double(text.substr(start, comma - start), what));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace duopoly::detail
