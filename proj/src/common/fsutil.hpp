#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace tscdn::fsutil {

namespace fs = std::filesystem;

std::optional<std::string> read_file(const fs::path& path);

// Writes to a sibling temporary file and renames over `path`.
void atomic_write(const fs::path& path, std::string_view bytes);

fs::path utf8_path(std::string_view utf8);
std::string path_utf8(const fs::path& p);

}  // namespace tscdn::fsutil
