#pragma once

#include <string>
#include <vector>

namespace tscdn {

// Structured, non-fatal warning. Serialized as one JSON object per line.
struct Warning {
  std::string code;
  std::string message;
  std::string path;

  friend bool operator==(const Warning&, const Warning&) = default;
};

class Diagnostics {
 public:
  void warn(std::string code, std::string message, std::string path = {});
  void append(const Diagnostics& other);

  const std::vector<Warning>& warnings() const { return items_; }
  std::size_t count(std::string_view code) const;
  bool empty() const { return items_.empty(); }

  std::string to_json_lines() const;

 private:
  std::vector<Warning> items_;
};

}  // namespace tscdn
