#pragma once

#include <string>
#include <vector>

#include "store/content_store.hpp"

namespace tscdn {

struct IntegrityIssue {
  std::string name;
  std::string problem;  // missing | size_mismatch | digest_mismatch | unindexed

  friend bool operator==(const IntegrityIssue&, const IntegrityIssue&) = default;
};

struct IntegrityReport {
  std::size_t checked = 0;
  std::vector<IntegrityIssue> issues;

  bool ok() const { return issues.empty(); }
};

// Re-hashes every cataloged object and checks that its bytes still match the
// digest in its filename. Files in objects/ that the catalog does not know
// about are reported as unindexed.
IntegrityReport verify_integrity(const ContentStore& store);

}  // namespace tscdn
