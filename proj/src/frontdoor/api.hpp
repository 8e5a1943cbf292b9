#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "common/error.hpp"
#include "frontdoor/engine.hpp"

namespace tscdn {

using ApiParams = std::map<std::string, std::string>;

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json; charset=utf-8";
};

int http_status(Errc code);
ApiResponse error_response(Errc code, const std::string& message);

// "a=1&b=x+y" with percent-decoding; the first value of a repeated key wins.
ApiParams parse_query_string(std::string_view query);

// ISO date or date-time in UTC. A bare date used as an upper bound covers
// the whole day.
Instant parse_bound(std::string_view text, bool upper);

// Builds a query from request parameters: q, from, to, channels, all_terms,
// coalesced, limit (default 200), offset, mode.
QuerySpec search_spec(const ApiParams& params);

nlohmann::ordered_json to_json(const ScoredEvent& e);
std::string serialize_results(const std::vector<ScoredEvent>& results);

// Dispatches GET /api/... and /healthz. Never throws.
ApiResponse handle_api(const Engine& engine, std::string_view path, const ApiParams& params);

// Content type for a stored object's extension.
std::string content_type_for(std::string_view ext);

}  // namespace tscdn
