#pragma once

namespace tcstab {
inline constexpr const char* kVersion = "0.1.0";
}
