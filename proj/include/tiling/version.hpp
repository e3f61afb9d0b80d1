#pragma once

#include <string_view>

namespace tiling {

inline constexpr std::string_view kToolName = "tilecensus";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace tiling
