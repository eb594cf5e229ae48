#pragma once

namespace resonet {

inline constexpr const char* version_string = "1.0.0";

} // namespace resonet
