#pragma once

namespace lmcts {
inline constexpr const char* kVersion = "0.1.0";
}
