#include "scoring/categories.hpp"

#include <set>

#include <json.hpp>

#include "common/error.hpp"

namespace tscdn {

CategorySeeds parse_category_seeds(std::string_view json_text) {
  nlohmann::ordered_json j;
  // The parser silently keeps the last of repeated keys, so catch them here.
  std::set<std::string> keys;
  std::string repeated;
  auto track = [&](int depth, nlohmann::ordered_json::parse_event_t event, nlohmann::ordered_json& parsed) {
    if (depth == 1 && event == nlohmann::ordered_json::parse_event_t::key && !keys.insert(parsed.get<std::string>()).second)
      repeated = parsed.get<std::string>();
    return true;
  };
  try {
    j = nlohmann::ordered_json::parse(json_text, track);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("categories.json: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::schema, "categories.json: expected an object of seed lists");
  if (!repeated.empty()) throw Error(Errc::schema, "categories.json: duplicate category " + repeated);
  CategorySeeds seeds;
  std::set<std::string> names;
  for (const auto& [name, list] : j.items()) {
    if (!list.is_array() || list.empty())
      throw Error(Errc::schema, "categories.json: category '" + name + "' needs at least one seed term");
    if (!names.insert(name).second) throw Error(Errc::schema, "categories.json: duplicate category " + name);
    std::vector<std::string> terms;
    for (const auto& t : list) {
      if (!t.is_string()) throw Error(Errc::schema, "categories.json: non-string seed in " + name);
      terms.push_back(t.get<std::string>());
    }
    seeds.emplace_back(name, std::move(terms));
  }
  return seeds;
}

std::vector<CategoryVector> build_category_vectors(const CategorySeeds& seeds, const TextPipeline& pipeline,
                                                   const CorpusTermStats& stats) {
  std::vector<CategoryVector> out;
  for (const auto& [name, terms] : seeds) {
    std::vector<std::string> normalized;
    for (const auto& seed : terms) {
      auto analyzed = pipeline.analyze(seed);
      normalized.insert(normalized.end(), analyzed.begin(), analyzed.end());
    }
    out.push_back({name, build_term_vector(normalized, stats)});
  }
  return out;
}

std::vector<CategoryScore> adapt_categories(const TermVector& event_vector,
                                            const std::vector<CategoryVector>& categories) {
  std::vector<CategoryScore> out;
  out.reserve(categories.size());
  for (const auto& c : categories) out.push_back({c.name, cosine(c.vector, event_vector)});
  return out;
}

}  // namespace tscdn
