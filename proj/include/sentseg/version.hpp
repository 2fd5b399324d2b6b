#pragma once

namespace sentseg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sentseg
