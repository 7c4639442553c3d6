#pragma once

namespace rotwave {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rotwave
