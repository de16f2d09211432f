#pragma once

namespace monadcert {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace monadcert
