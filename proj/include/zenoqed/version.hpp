#pragma once

namespace zenoqed {
inline constexpr const char* kToolName = "zenoqed";
inline constexpr const char* kVersion = "0.1.0";
}  // namespace zenoqed
