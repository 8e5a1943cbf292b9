#pragma once

#include <set>
#include <string>
#include <string_view>

#include "common/diagnostics.hpp"
#include "store/content_store.hpp"

namespace tscdn {

struct RewriteOptions {
  std::string cdn_prefix = "cdn";
  std::string base_dir;  // directory of the page, relative to the export root
  // Links to these extensions are page navigation, not media; never rewritten.
  std::set<std::string> page_extensions = {"html", "htm"};
};

struct RewriteResult {
  std::string html;
  std::size_t rewritten = 0;
  std::size_t unchanged = 0;
};

// Replaces every local link found in `dictionary` with <prefix>/<stored name>.
// All other bytes are copied through. Links already pointing into the prefix
// are left alone, which makes the rewrite idempotent.
RewriteResult rewrite_references(std::string_view html, const ArchiveDictionary& dictionary,
                                 const RewriteOptions& options, Diagnostics& diag);

}  // namespace tscdn
