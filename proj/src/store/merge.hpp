#pragma once

#include <cstdint>

#include "common/diagnostics.hpp"
#include "store/content_store.hpp"

namespace tscdn {

struct MergeReport {
  std::size_t objects_added = 0;
  std::size_t objects_deduplicated = 0;
  std::uint64_t bytes_added = 0;
  std::uint64_t bytes_saved = 0;
  std::size_t archives_merged = 0;
};

// Folds `other` into `master`: the object set becomes the union keyed by
// (hash, ext), dictionaries are united, and cdn-index.json is rewritten once
// at the end. Throws Error(integrity) without modifying the master index if
// a shared key disagrees on byte length.
MergeReport merge_cdn(ContentStore& master, const ContentStore& other, Diagnostics& diag);

}  // namespace tscdn
