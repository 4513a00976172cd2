/**
 * @file version.hpp
 * @brief Library version and persisted-format identifiers.
 */
#pragma once

namespace g2torsion {

inline constexpr const char* kVersion = "1.0.0";

/// Magic first line of every persisted multiplication-matrix file.
inline constexpr const char* kCacheMagic = "G2TORSION-MATRIX v1";

/// Environment variable that overrides the default cache directory.
inline constexpr const char* kCacheEnvVar = "G2TORSION_CACHE_DIR";

}  // namespace g2torsion
