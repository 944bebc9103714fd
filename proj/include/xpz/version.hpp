#pragma once

namespace xpz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace xpz
