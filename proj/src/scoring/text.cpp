#include "scoring/text.hpp"

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>

#include <memory>

#include "common/error.hpp"
#include "common/unicode.hpp"

namespace tscdn {

namespace {

icu::BreakIterator& word_breaker() {
  thread_local std::unique_ptr<icu::BreakIterator> it = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> bi(icu::BreakIterator::createWordInstance(icu::Locale::getRoot(), status));
    if (U_FAILURE(status) || !bi) throw Error(Errc::internal, "ICU word break iterator unavailable");
    return bi;
  }();
  return *it;
}

std::string trim(std::string_view v) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!v.empty() && ws(v.front())) v.remove_prefix(1);
  while (!v.empty() && ws(v.back())) v.remove_suffix(1);
  return std::string(v);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  if (text.empty()) return tokens;
  std::string normalized = unicode::nfc(text);
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(normalized);
  icu::BreakIterator& bi = word_breaker();
  bi.setText(u);
  int32_t start = bi.first();
  for (int32_t end = bi.next(); end != icu::BreakIterator::DONE; start = end, end = bi.next()) {
    if (bi.getRuleStatus() < UBRK_WORD_NONE_LIMIT) continue;
    icu::UnicodeString word(u, start, end - start);
    word.foldCase();
    std::string out;
    word.toUTF8String(out);
    tokens.push_back(unicode::nfc(out));
  }
  return tokens;
}

Stemmer Stemmer::parse_rules(std::string_view text) {
  std::vector<SuffixRule> rules;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    std::string suffix = unicode::nfc(trim(line.substr(0, tab)));
    std::string repl = tab == std::string_view::npos ? std::string{} : unicode::nfc(trim(line.substr(tab + 1)));
    if (suffix.empty()) continue;
    rules.push_back({std::move(suffix), std::move(repl)});
  }
  return Stemmer(std::move(rules));
}

std::string Stemmer::apply(std::string_view token) const {
  for (const auto& rule : rules_) {
    if (token.size() < rule.suffix.size()) continue;
    if (token.substr(token.size() - rule.suffix.size()) != rule.suffix) continue;
    std::string_view stem = token.substr(0, token.size() - rule.suffix.size());
    if (unicode::codepoint_count(stem) < 2) return std::string(token);
    return std::string(stem) + rule.replacement;
  }
  return std::string(token);
}

std::set<std::string> parse_stopwords(std::string_view text) {
  std::set<std::string> words;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    std::string w = trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.insert(unicode::nfc(unicode::fold_case(w)));
  }
  return words;
}

std::optional<std::string> normalize_token(std::string_view token, const std::set<std::string>& stopwords,
                                           const Stemmer& stemmer) {
  std::string t = unicode::nfc(token);
  if (t.empty() || stopwords.count(t)) return std::nullopt;
  std::string stemmed = unicode::nfc(stemmer.apply(t));
  if (stemmed.empty()) return std::nullopt;
  return stemmed;
}

std::optional<std::string> TextPipeline::normalize(std::string_view token) const {
  return normalize_token(token, stopwords_, stemmer_);
}

std::vector<std::string> TextPipeline::analyze(std::string_view text) const {
  std::vector<std::string> terms;
  for (const auto& tok : tokenize(text))
    if (auto term = normalize(tok)) terms.push_back(std::move(*term));
  return terms;
}

}  // namespace tscdn
