#pragma once

namespace leadlag {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace leadlag
