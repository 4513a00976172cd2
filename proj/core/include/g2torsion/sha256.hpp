/**
 * @file sha256.hpp
 * @brief Minimal SHA-256 (FIPS 180-4) for cache-manifest integrity hashes.
 *
 * Self-contained so the cache format has no external dependency; not
 * intended as a general-purpose cryptographic service.
 */
#pragma once

#include <cstdint>
#include <string>

namespace g2torsion {

/// SHA-256 digest of `data`, as a 64-character lowercase hex string.
std::string sha256_hex(const std::string& data);

/// Streaming variant for hashing large files without buffering them whole.
class Sha256 {
 public:
  Sha256();
  void update(const void* data, std::size_t len);
  /// Finalize and return the lowercase hex digest.  The object must not be
  /// updated afterwards.
  std::string hex_digest();

 private:
  void process_block(const std::uint8_t* block);

  std::uint32_t h_[8];
  std::uint8_t buffer_[64];
  std::size_t buffered_;
  std::uint64_t total_bits_;
};

}  // namespace g2torsion
