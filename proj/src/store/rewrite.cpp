#include "store/rewrite.hpp"

#include "ingest/links.hpp"

namespace tscdn {

namespace {

std::string trimmed_prefix(std::string_view prefix) {
  while (!prefix.empty() && prefix.back() == '/') prefix.remove_suffix(1);
  return std::string(prefix);
}

}  // namespace

RewriteResult rewrite_references(std::string_view html, const ArchiveDictionary& dictionary,
                                 const RewriteOptions& options, Diagnostics& diag) {
  RewriteResult result;
  const std::string prefix = trimmed_prefix(options.cdn_prefix);
  const std::string prefix_slash = prefix + "/";
  auto links = extract_links(html, options.base_dir);

  std::size_t copied = 0;
  result.html.reserve(html.size());
  for (const auto& link : links) {
    std::string_view raw = link.raw_path;
    if (raw.rfind(prefix_slash, 0) == 0 && is_stored_name(raw.substr(prefix_slash.size()))) continue;
    if (options.page_extensions.count(extension_of(link.resolved_path))) continue;

    auto it = dictionary.find(link.resolved_path);
    if (it == dictionary.end() || !it->second) {
      ++result.unchanged;
      diag.warn(it == dictionary.end() ? "unmapped_link" : "missing_media",
                "reference left unchanged: " + link.raw_path, link.resolved_path);
      continue;
    }
    result.html.append(html.substr(copied, link.value_offset - copied));
    result.html.append(prefix_slash);
    result.html.append(*it->second);
    copied = link.value_offset + link.value_length;
    ++result.rewritten;
  }
  result.html.append(html.substr(copied));
  return result;
}

}  // namespace tscdn
