#pragma once

// Reference implementations written straight from the definitions, used to
// cross-check the optimized code paths.

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "corpus/event.hpp"
#include "index/posting.hpp"
#include "index/query.hpp"
#include "scoring/text.hpp"

namespace tscdn::testing {

// md5sum(1) over the bytes.
std::string md5_oracle(std::string_view bytes);

// find(1) listing of .html/.htm files, relative, byte-order sorted.
std::vector<std::string> html_listing_oracle(const std::filesystem::path& root);

class BruteForceScorer {
 public:
  BruteForceScorer(const Corpus& corpus, const TextPipeline& pipeline);

  std::size_t events() const { return latest_.size(); }
  std::size_t ef(const std::string& term) const;
  static double tf(const std::string& term, const std::vector<std::string>& tokens);
  double ief(const std::string& term) const;
  double tf_ief(const std::string& term, const std::vector<std::string>& tokens) const;
  std::map<std::string, double> vector(const std::vector<std::string>& tokens) const;
  static double cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b);

 private:
  std::vector<std::vector<std::string>> latest_;  // token list of each event's latest version
};

struct OracleHit {
  EventId event;
  Instant timestamp{};
  double tf_ief_sum = 0.0;
  double cosine = 0.0;
};

// Scans every version of every event. A version matches when it contains a
// query term and its time condition holds; the event is scored on its
// latest matching version.
std::vector<OracleHit> linear_scan_query(const Corpus& corpus, const TextPipeline& pipeline,
                                         const std::vector<std::string>& keywords, Instant from, Instant to,
                                         bool all_terms = false, TemporalMode mode = TemporalMode::occurrence,
                                         const std::set<std::string>& channels = {});

// Maximal coalescing runs of a posting list as (first, last) index pairs,
// enumerated from the definition: same event, adjacent intervals, scores
// within tau * |anchor score| of the run's first entry.
std::vector<std::pair<std::size_t, std::size_t>> coalesce_runs_oracle(const std::vector<PostingEntry>& list,
                                                                     const std::vector<double>& scores, double tau);

}  // namespace tscdn::testing
