#pragma once

namespace pexeq {

inline constexpr const char* kToolName = "pexeq";
inline constexpr const char* kVersion = "0.1.0";

}
