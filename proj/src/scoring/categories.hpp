#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scoring/text.hpp"
#include "scoring/vector.hpp"

namespace tscdn {

// Category name -> seed keywords, in file order.
using CategorySeeds = std::vector<std::pair<std::string, std::vector<std::string>>>;

// {"<name>": ["seed", ...], ...}. Throws Error(schema) on malformed input,
// empty seed lists or duplicate names.
CategorySeeds parse_category_seeds(std::string_view json_text);

struct CategoryVector {
  std::string name;
  TermVector vector;
};

std::vector<CategoryVector> build_category_vectors(const CategorySeeds& seeds, const TextPipeline& pipeline,
                                                   const CorpusTermStats& stats);

struct CategoryScore {
  std::string name;
  double similarity = 0.0;
};

// Cosine of the event vector against every category, in category order.
std::vector<CategoryScore> adapt_categories(const TermVector& event_vector,
                                            const std::vector<CategoryVector>& categories);

}  // namespace tscdn
