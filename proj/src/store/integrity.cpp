#include "store/integrity.hpp"

#include <filesystem>

#include "common/fsutil.hpp"

namespace tscdn {

namespace fs = std::filesystem;

IntegrityReport verify_integrity(const ContentStore& store) {
  IntegrityReport report;
  for (const auto& [key, obj] : store.objects()) {
    ++report.checked;
    const std::string name = obj.filename();
    auto bytes = fsutil::read_file(store.objects_dir() / name);
    if (!bytes) {
      report.issues.push_back({name, "missing"});
      continue;
    }
    if (bytes->size() != obj.size_bytes) {
      report.issues.push_back({name, "size_mismatch"});
      continue;
    }
    auto algo = obj.hash.hex().size() == 64 ? DigestAlgorithm::sha256 : DigestAlgorithm::md5;
    if (hash_content(*bytes, algo) != obj.hash) report.issues.push_back({name, "digest_mismatch"});
  }
  std::error_code ec;
  for (fs::directory_iterator it(store.objects_dir(), ec), end; !ec && it != end; it.increment(ec)) {
    std::string name = fsutil::path_utf8(it->path().filename());
    if (name.rfind('.', 0) == 0 || name.find(".tmp-") != std::string::npos) continue;
    if (!store.find(name)) report.issues.push_back({name, "unindexed"});
  }
  return report;
}

}  // namespace tscdn
