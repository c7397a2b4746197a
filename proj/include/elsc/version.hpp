#pragma once

namespace elsc {

inline constexpr const char* kToolName = "elsc";

// Version string: release plus the source revision baked in by the build.
#ifndef ELSC_BUILD_REV
#define ELSC_BUILD_REV "unknown"
#endif
inline constexpr const char* kVersion = "0.1.0+" ELSC_BUILD_REV;

}  // namespace elsc
