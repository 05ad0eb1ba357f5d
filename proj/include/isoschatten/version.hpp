#pragma once

namespace isoschatten {

inline constexpr const char* kToolName = "isoschatten";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace isoschatten
