#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "corpus/event.hpp"

namespace tscdn {

inline constexpr int kJsonDbSchema = 1;

// One channel's messages in the JSON DB layout. Every version is one entry;
// entries of a multi-version event share an id and appear in version order.
nlohmann::ordered_json to_json_db(const Corpus& corpus, const std::string& channel_slug);

// Writes <out_dir>/<slug>.json for every channel of the corpus.
void export_json_db(const Corpus& corpus, const std::filesystem::path& out_dir);

// Parses one channel document. Throws Error(schema) naming the JSON pointer
// of the first offending value, or the unsupported schema version.
Corpus corpus_from_json_db(const nlohmann::json& doc);
Corpus import_json_db(const std::filesystem::path& file);
// Every *.json under `dir`, combined.
Corpus import_json_db_dir(const std::filesystem::path& dir);

}  // namespace tscdn
