#pragma once

namespace cft {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cft
