#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace tscdn::unicode {

bool is_valid_utf8(std::string_view bytes);

// Decodes as UTF-8 replacing malformed sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes, std::size_t* replaced = nullptr);

// NFC normal form. Input must be valid UTF-8; invalid input is sanitized first.
std::string nfc(std::string_view utf8);

std::string fold_case(std::string_view utf8);

std::size_t codepoint_count(std::string_view utf8);

void append_utf8(std::string& out, char32_t cp);

}  // namespace tscdn::unicode
