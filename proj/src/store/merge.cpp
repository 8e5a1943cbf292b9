#include "store/merge.hpp"

#include <filesystem>

#include "common/error.hpp"
#include "common/fsutil.hpp"

namespace tscdn {

namespace fs = std::filesystem;

MergeReport merge_cdn(ContentStore& master, const ContentStore& other, Diagnostics& diag) {
  MergeReport report;
  auto objects = master.objects();
  auto dictionaries = master.dictionaries();

  std::vector<const StoredObject*> to_copy;
  for (const auto& [key, obj] : other.objects()) {
    auto it = objects.find(key);
    if (it == objects.end()) {
      to_copy.push_back(&obj);
      continue;
    }
    if (it->second.size_bytes != obj.size_bytes)
      throw Error(Errc::integrity, "object " + obj.filename() + " has size " +
                                       std::to_string(it->second.size_bytes) + " in master but " +
                                       std::to_string(obj.size_bytes) + " in merged store");
  }

  std::error_code eq_ec;
  bool same_root = fs::equivalent(master.objects_dir(), other.objects_dir(), eq_ec);
  for (const StoredObject* obj : to_copy) {
    fs::path dst = master.objects_dir() / obj->filename();
    if (!same_root) {
      auto bytes = fsutil::read_file(other.objects_dir() / obj->filename());
      if (!bytes) throw Error(Errc::io, "cannot read object " + obj->filename() + " from merged store");
      if (bytes->size() != obj->size_bytes)
        throw Error(Errc::integrity, "object " + obj->filename() + " is truncated in merged store");
      std::error_code ec;
      if (!fs::exists(dst, ec)) fsutil::atomic_write(dst, *bytes);
    }
  }

  for (const auto& [key, obj] : other.objects()) {
    auto [it, inserted] = objects.emplace(key, obj);
    if (inserted) {
      ++report.objects_added;
      report.bytes_added += obj.size_bytes;
    } else {
      ++report.objects_deduplicated;
      report.bytes_saved += obj.size_bytes;
      it->second.source_names.insert(obj.source_names.begin(), obj.source_names.end());
      if (obj.first_seen < it->second.first_seen) it->second.first_seen = obj.first_seen;
    }
  }

  for (const auto& [archive, entries] : other.dictionaries()) {
    auto [dit, fresh] = dictionaries.emplace(archive, entries);
    if (fresh) {
      ++report.archives_merged;
      continue;
    }
    for (const auto& [path, target] : entries) {
      auto [eit, inserted] = dit->second.emplace(path, target);
      if (!inserted && eit->second != target) {
        if (!eit->second && target) {
          eit->second = target;
        } else {
          diag.warn("dictionary_conflict",
                    "archive " + archive + " maps the path differently in both stores; keeping master",
                    path);
        }
      }
    }
  }

  master.replace_catalog(std::move(objects), std::move(dictionaries));
  master.save_index();
  return report;
}

}  // namespace tscdn
