#pragma once

namespace rabi {

inline constexpr const char* tool_name = "rabisim";
inline constexpr const char* tool_version = "0.1.0";

}  // namespace rabi
