#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "scoring/categories.hpp"
#include "scoring/text.hpp"

namespace tscdn {

// Built-in copies of data/stopwords.txt, data/stemmer.rules and
// data/categories.json.
std::string_view default_stopwords_text();
std::string_view default_stemmer_rules_text();
std::string_view default_categories_text();

struct ScoringOptions {
  std::optional<std::filesystem::path> config_dir;  // overrides any of the three files
  bool suffix_stemmer = false;                       // identity stemmer otherwise

  friend bool operator==(const ScoringOptions&, const ScoringOptions&) = default;
};

struct ScoringConfig {
  TextPipeline pipeline;
  CategorySeeds categories;
};

ScoringConfig load_scoring_config(const ScoringOptions& options = {});

}  // namespace tscdn
