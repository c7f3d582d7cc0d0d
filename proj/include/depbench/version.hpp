#pragma once

#include <string_view>

namespace depbench {

inline constexpr std::string_view kToolName = "depbench";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace depbench
