#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "support/fixtures.hpp"

namespace tscdn::testing {

std::string md5_oracle(std::string_view bytes) {
  TempDir dir;
  write_file(dir / "blob", bytes);
  CommandResult r = run_command("md5sum " + shell_quote((dir / "blob").string()));
  return r.output.substr(0, 32);
}

std::vector<std::string> html_listing_oracle(const std::filesystem::path& root) {
  CommandResult r = run_command("cd " + shell_quote(root.string()) +
                                " && find . -type f \\( -name '*.html' -o -name '*.htm' \\) | LC_ALL=C sort");
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < r.output.size()) {
    auto nl = r.output.find('\n', pos);
    std::string line = r.output.substr(pos, nl - pos);
    if (line.rfind("./", 0) == 0) line = line.substr(2);
    if (!line.empty()) out.push_back(line);
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return out;
}

BruteForceScorer::BruteForceScorer(const Corpus& corpus, const TextPipeline& pipeline) {
  for (const auto& [id, chain] : corpus.events) latest_.push_back(pipeline.analyze(chain.back().text));
}

std::size_t BruteForceScorer::ef(const std::string& term) const {
  std::size_t n = 0;
  for (const auto& tokens : latest_)
    for (const auto& t : tokens)
      if (t == term) {
        ++n;
        break;
      }
  return n;
}

double BruteForceScorer::tf(const std::string& term, const std::vector<std::string>& tokens) {
  if (tokens.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto& t : tokens) count += t == term;
  return static_cast<double>(count) / static_cast<double>(tokens.size());
}

double BruteForceScorer::ief(const std::string& term) const {
  double e = static_cast<double>(events());
  std::size_t f = ef(term);
  return f == 0 ? std::log2(2.0 * e) : std::log2(e / static_cast<double>(f));
}

double BruteForceScorer::tf_ief(const std::string& term, const std::vector<std::string>& tokens) const {
  double t = tf(term, tokens);
  return t == 0.0 ? 0.0 : t * ief(term);
}

std::map<std::string, double> BruteForceScorer::vector(const std::vector<std::string>& tokens) const {
  std::map<std::string, double> v;
  for (const auto& t : tokens) {
    if (v.count(t)) continue;
    double w = tf_ief(t, tokens);
    if (w != 0.0) v[t] = w;
  }
  return v;
}

double BruteForceScorer::cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  double na = 0.0, nb = 0.0, dot = 0.0;
  for (const auto& [t, w] : a) na += w * w;
  for (const auto& [t, w] : b) nb += w * w;
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (na == 0.0 || nb == 0.0) return 0.0;
  for (const auto& [t, w] : a) {
    auto it = b.find(t);
    if (it != b.end()) dot += w * it->second;
  }
  return std::clamp(dot / (na * nb), 0.0, 1.0);
}

std::vector<OracleHit> linear_scan_query(const Corpus& corpus, const TextPipeline& pipeline,
                                         const std::vector<std::string>& keywords, Instant from, Instant to,
                                         bool all_terms, TemporalMode mode, const std::set<std::string>& channels) {
  BruteForceScorer scorer(corpus, pipeline);
  std::vector<std::string> query_tokens;
  std::vector<std::string> terms;
  for (const auto& k : keywords)
    for (const auto& t : pipeline.analyze(k)) {
      query_tokens.push_back(t);
      if (std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(t);
    }
  auto query_vec = scorer.vector(query_tokens);

  std::vector<OracleHit> hits;
  for (const auto& [id, chain] : corpus.events) {
    if (!channels.empty() && !channels.count(id.channel)) continue;
    std::set<std::string> seen_terms;
    const EventVersion* best = nullptr;
    std::vector<std::string> best_tokens;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      Instant begin = chain[i].timestamp;
      bool open = i + 1 == chain.size();
      Instant end = open ? Instant::max() : chain[i + 1].timestamp;
      bool in_time = mode == TemporalMode::occurrence ? (from <= begin && begin <= to) : (begin <= to && end > from);
      if (!in_time) continue;
      auto tokens = pipeline.analyze(chain[i].text);
      bool any = false;
      for (const auto& term : terms)
        if (std::find(tokens.begin(), tokens.end(), term) != tokens.end()) {
          seen_terms.insert(term);
          any = true;
        }
      if (any && (!best || best->timestamp < begin)) {
        best = &chain[i];
        best_tokens = tokens;
      }
    }
    if (!best) continue;
    if (all_terms && seen_terms.size() != terms.size()) continue;
    OracleHit h;
    h.event = id;
    h.timestamp = best->timestamp;
    for (const auto& term : terms) {
      std::size_t count = static_cast<std::size_t>(std::count(best_tokens.begin(), best_tokens.end(), term));
      if (count) h.tf_ief_sum += static_cast<double>(count) / static_cast<double>(best_tokens.size()) * scorer.ief(term);
    }
    h.cosine = BruteForceScorer::cosine(query_vec, scorer.vector(best_tokens));
    hits.push_back(h);
  }
  std::sort(hits.begin(), hits.end(), [](const OracleHit& a, const OracleHit& b) {
    if (a.cosine != b.cosine) return a.cosine > b.cosine;
    if (a.tf_ief_sum != b.tf_ief_sum) return a.tf_ief_sum > b.tf_ief_sum;
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.event < b.event;
  });
  return hits;
}

std::vector<std::pair<std::size_t, std::size_t>> coalesce_runs_oracle(const std::vector<PostingEntry>& list,
                                                                     const std::vector<double>& scores, double tau) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t i = 0;
  while (i < list.size()) {
    std::size_t last = i;
    for (std::size_t k = i + 1; k < list.size(); ++k) {
      bool same_event = list[k].event == list[i].event;
      bool adjacent = list[k - 1].interval.end && *list[k - 1].interval.end == list[k].interval.begin;
      bool close = std::fabs(scores[k] - scores[i]) <= tau * std::fabs(scores[i]);
      if (!(same_event && adjacent && close)) break;
      last = k;
    }
    runs.emplace_back(i, last);
    i = last + 1;
  }
  return runs;
}

}  // namespace tscdn::testing
