#pragma once

namespace sheetwave {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sheetwave
