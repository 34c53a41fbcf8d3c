#pragma once

namespace qfs {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "qfsplit 1.0.0";

}  // namespace qfs
