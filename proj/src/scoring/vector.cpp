#include "scoring/vector.hpp"

#include <algorithm>
#include <cmath>

namespace tscdn {

TermVector::TermVector(std::map<std::string, double> weights) {
  for (auto it = weights.begin(); it != weights.end();) {
    if (it->second == 0.0)
      it = weights.erase(it);
    else
      ++it;
  }
  weights_ = std::move(weights);
  double sum = 0.0;
  for (const auto& [term, w] : weights_) sum += w * w;
  norm_ = std::sqrt(sum);
}

double TermVector::weight(const std::string& term) const {
  auto it = weights_.find(term);
  return it == weights_.end() ? 0.0 : it->second;
}

TermVector TermVector::scaled(double factor) const {
  auto w = weights_;
  for (auto& [term, v] : w) v *= factor;
  return TermVector(std::move(w));
}

TermVector build_term_vector(std::span<const std::string> terms, const CorpusTermStats& stats) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : terms) ++counts[t];
  std::map<std::string, double> weights;
  for (const auto& [term, count] : counts) {
    double w = tf_from_counts(count, terms.size()) * ief(term, stats);
    if (w > 0.0) weights.emplace(term, w);
  }
  return TermVector(std::move(weights));
}

double cosine(const TermVector& q, const TermVector& e) {
  if (q.norm() == 0.0 || e.norm() == 0.0) return 0.0;
  const auto& a = q.weights();
  const auto& b = e.weights();
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return std::clamp(dot / (q.norm() * e.norm()), 0.0, 1.0);
}

}  // namespace tscdn
