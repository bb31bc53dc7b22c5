#pragma once

namespace setcx {

inline constexpr const char* version = "0.1.0";

}  // namespace setcx
