#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tscdn {

// Error categories surfaced through the C API as status codes.
enum class Errc {
  invalid_argument = 1,
  io,
  integrity,
  parse,
  schema,
  empty_query,
  invalid_interval,
  empty_corpus,
  model_violation,
  not_found,
  internal,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tscdn
