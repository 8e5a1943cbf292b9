#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tscdn {

enum class DigestAlgorithm { md5, sha256 };

// Lowercase hex content digest: 32 characters for MD5, 64 for SHA-256.
class ContentHash {
 public:
  ContentHash() = default;
  static std::optional<ContentHash> from_hex(std::string_view hex);

  const std::string& hex() const { return hex_; }

  friend auto operator<=>(const ContentHash&, const ContentHash&) = default;

 private:
  explicit ContentHash(std::string hex) : hex_(std::move(hex)) {}
  std::string hex_;

  friend ContentHash hash_content(std::string_view, DigestAlgorithm);
};

ContentHash hash_content(std::string_view bytes, DigestAlgorithm algo = DigestAlgorithm::md5);

}  // namespace tscdn
