#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "index/posting.hpp"

namespace tscdn {

inline constexpr int kIndexSchemaVersion = 1;

// One line of JSON followed by "#md5:<hex>" over those bytes. Output is
// deterministic for equal indexes.
std::string serialize_index(const InvertedIndex& index);

// Throws Error(integrity) on a missing or wrong checksum and Error(schema)
// on an unknown schema version or malformed content.
InvertedIndex deserialize_index(std::string_view text);

void save_index(const InvertedIndex& index, const std::filesystem::path& file);
InvertedIndex load_index(const std::filesystem::path& file);

}  // namespace tscdn
