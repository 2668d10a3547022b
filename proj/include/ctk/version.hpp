#pragma once

namespace ctk {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace ctk
