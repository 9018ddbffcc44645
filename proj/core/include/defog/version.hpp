#pragma once

namespace defog {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace defog
