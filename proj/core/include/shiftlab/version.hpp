#pragma once

namespace shiftlab {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace shiftlab
