#pragma once

namespace partact {
inline constexpr const char* kVersion = "0.1.0";
}
