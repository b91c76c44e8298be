#pragma once

namespace qint {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace qint
