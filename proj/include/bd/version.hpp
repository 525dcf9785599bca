#pragma once

namespace bd {

inline constexpr const char* kVersion = "bdlab 0.1.0";

}  // namespace bd
