#pragma once

namespace semidyn {
inline constexpr const char* kVersion = "0.1.0";
}
