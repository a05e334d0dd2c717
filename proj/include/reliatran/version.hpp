#pragma once

namespace reliatran {

inline constexpr const char* kToolName = "reliatran";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace reliatran
