#include "scoring/defaults.hpp"

#include "common/fsutil.hpp"

namespace tscdn {

std::string_view default_stopwords_text() {
  static constexpr std::string_view kText = R"(# Persian
و
در
به
از
که
این
آن
را
با
است
برای
تا
یک
هم
بر
یا
نیز
شد
شده
شود
می
های
ها
اما
اگر
هر
کرد
کند
دارد
بود
باشد
خود
ای
# English
a
an
and
are
as
at
be
by
for
from
in
is
it
of
on
or
that
the
this
to
was
were
with
)";
  return kText;
}

std::string_view default_stemmer_rules_text() {
  static constexpr std::string_view kText =
      "# suffix<TAB>replacement, first match wins\n"
      "\u200Cهایی\t\n"
      "\u200Cهای\t\n"
      "\u200Cها\t\n"
      "\u200Cترین\t\n"
      "\u200Cتر\t\n"
      "ies\ty\n"
      "ss\tss\n"
      "s\t\n";
  return kText;
}

std::string_view default_categories_text() {
  static constexpr std::string_view kText = R"json({
  "Coronavirus (COVID-19)": ["coronavirus", "covid", "corona", "کرونا", "کووید"],
  "Vaccine": ["vaccine", "vaccination", "واکسن"],
  "Reopening School": ["school", "reopening", "مدرسه", "مدارس", "بازگشایی"],
  "Earthquake": ["earthquake", "زلزله", "زمین‌لرزه"],
  "Fire": ["fire", "آتش", "آتش‌سوزی"],
  "Flood": ["flood", "سیل"],
  "Justice shares": ["justice", "shares", "سهام", "عدالت"],
  "Petroleum": ["petroleum", "oil", "نفت", "بنزین"],
  "Quarantine": ["quarantine", "lockdown", "قرنطینه"]
}
)json";
  return kText;
}

namespace {

std::optional<std::string> config_file(const ScoringOptions& options, const char* name) {
  if (!options.config_dir) return std::nullopt;
  return fsutil::read_file(*options.config_dir / name);
}

}  // namespace

ScoringConfig load_scoring_config(const ScoringOptions& options) {
  auto stop = config_file(options, "stopwords.txt");
  auto rules = config_file(options, "stemmer.rules");
  auto cats = config_file(options, "categories.json");
  Stemmer stemmer;
  if (options.suffix_stemmer)
    stemmer = Stemmer::parse_rules(rules ? *rules : std::string(default_stemmer_rules_text()));
  ScoringConfig cfg{TextPipeline(parse_stopwords(stop ? *stop : std::string(default_stopwords_text())),
                                 std::move(stemmer)),
                    parse_category_seeds(cats ? *cats : std::string(default_categories_text()))};
  return cfg;
}

}  // namespace tscdn
