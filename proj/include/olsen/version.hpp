#pragma once

namespace olsen {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace olsen
