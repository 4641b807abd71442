#pragma once

namespace snn {
inline constexpr const char* kVersion = "0.1.0";
}
