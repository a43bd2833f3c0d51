#pragma once

namespace xrank {
inline constexpr const char* kVersion = "0.1.0";
}
