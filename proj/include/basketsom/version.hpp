#pragma once

#include <string_view>

namespace basketsom {

inline constexpr std::string_view kToolName = "basketsom";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace basketsom
