#pragma once

namespace rct {

inline constexpr const char* kProjectName = "rct";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace rct
