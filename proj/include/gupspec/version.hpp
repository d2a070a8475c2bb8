#pragma once

namespace gupspec {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace gupspec
