#pragma once

namespace mcfdtd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mcfdtd
