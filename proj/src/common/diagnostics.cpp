#include "common/diagnostics.hpp"

#include <algorithm>
#include <json.hpp>

namespace tscdn {

void Diagnostics::warn(std::string code, std::string message, std::string path) {
  items_.push_back({std::move(code), std::move(message), std::move(path)});
}

void Diagnostics::append(const Diagnostics& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

std::size_t Diagnostics::count(std::string_view code) const {
  return static_cast<std::size_t>(
      std::count_if(items_.begin(), items_.end(), [&](const Warning& w) { return w.code == code; }));
}

std::string Diagnostics::to_json_lines() const {
  std::string out;
  for (const auto& w : items_) {
    nlohmann::ordered_json j;
    j["level"] = "warning";
    j["code"] = w.code;
    j["message"] = w.message;
    if (!w.path.empty()) j["path"] = w.path;
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

}  // namespace tscdn
