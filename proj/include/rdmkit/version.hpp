#pragma once

namespace rdmkit {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace rdmkit
