#pragma once

#include <string_view>
#include <vector>

namespace stin {

/// Threshold grids: "log:a:b:n" (geometric), "lin:a:b:n" or "list:x1,x2,...".
/// Throws ConfigError with key "grid" when malformed.
std::vector<double> parse_grid(std::string_view spec);

inline constexpr std::string_view kDefaultGrid = "log:1e5:1e9:50";

}  // namespace stin
