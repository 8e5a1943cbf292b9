#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tscdn {

// Word tokens of `text`: NFC, Unicode word boundaries, case-folded.
// Punctuation, whitespace and symbols (emoji) are dropped; numbers are kept.
std::vector<std::string> tokenize(std::string_view text);

struct SuffixRule {
  std::string suffix;
  std::string replacement;
};

// Ordered suffix -> replacement table; the first matching rule wins and is
// only applied when at least two characters of stem remain. An empty table
// is the identity stemmer.
class Stemmer {
 public:
  Stemmer() = default;
  explicit Stemmer(std::vector<SuffixRule> rules) : rules_(std::move(rules)) {}

  // One rule per line: `suffix<TAB>replacement` (replacement may be empty).
  // Blank lines and lines starting with '#' are ignored.
  static Stemmer parse_rules(std::string_view text);

  std::string apply(std::string_view token) const;
  bool is_identity() const { return rules_.empty(); }
  const std::vector<SuffixRule>& rules() const { return rules_; }

 private:
  std::vector<SuffixRule> rules_;
};

std::set<std::string> parse_stopwords(std::string_view text);

// Token -> term normalization: stopword removal first, then stemming.
class TextPipeline {
 public:
  TextPipeline() = default;
  TextPipeline(std::set<std::string> stopwords, Stemmer stemmer)
      : stopwords_(std::move(stopwords)), stemmer_(std::move(stemmer)) {}

  // nullopt when the token is a stopword or normalizes to nothing.
  std::optional<std::string> normalize(std::string_view token) const;

  // tokenize + normalize, keeping survivors in text order.
  std::vector<std::string> analyze(std::string_view text) const;

  const std::set<std::string>& stopwords() const { return stopwords_; }
  const Stemmer& stemmer() const { return stemmer_; }

 private:
  std::set<std::string> stopwords_;
  Stemmer stemmer_;
};

std::optional<std::string> normalize_token(std::string_view token, const std::set<std::string>& stopwords,
                                           const Stemmer& stemmer);

}  // namespace tscdn
