#include "stin/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "stin/error.hpp"

namespace stin {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double to_number(const std::string& s, std::string_view spec) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw ConfigError("grid", "bad number '" + s + "' in grid '" + std::string(spec) + "'");
    return v;
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw ConfigError("grid", "grid must start with log:, lin: or list:");
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view rest = spec.substr(colon + 1);
    std::vector<double> grid;
    if (kind == "list") {
        for (const auto& item : split(rest, ',')) grid.push_back(to_number(item, spec));
    } else if (kind == "log" || kind == "lin") {
        const auto parts = split(rest, ':');
        if (parts.size() != 3) throw ConfigError("grid", "expected " + std::string(kind) + ":a:b:n");
        const double a = to_number(parts[0], spec);
        const double b = to_number(parts[1], spec);
        const double nd = to_number(parts[2], spec);
        if (nd < 1 || nd != std::floor(nd) || nd > 1e6)
            throw ConfigError("grid", "grid point count must be a positive integer");
        const auto n = static_cast<std::size_t>(nd);
        if (kind == "log" && !(a > 0.0 && b > 0.0))
            throw ConfigError("grid", "log grid needs positive ends");
        for (std::size_t i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
            grid.push_back(kind == "log" ? a * std::pow(b / a, t) : a + t * (b - a));
        }
        if (n > 1) grid.back() = b;
    } else {
        throw ConfigError("grid", "unknown grid kind '" + std::string(kind) + "'");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0) throw ConfigError("grid", "thresholds must be nonnegative");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw ConfigError("grid", "thresholds must be strictly increasing");
    }
    return grid;
}

}  // namespace stin
