#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "scoring/tf_ief.hpp"

namespace tscdn {

// Sparse non-negative term weights with a cached Euclidean norm.
class TermVector {
 public:
  TermVector() = default;
  explicit TermVector(std::map<std::string, double> weights);

  const std::map<std::string, double>& weights() const { return weights_; }
  double norm() const { return norm_; }
  bool empty() const { return weights_.empty(); }
  double weight(const std::string& term) const;

  TermVector scaled(double factor) const;

  friend bool operator==(const TermVector&, const TermVector&) = default;

 private:
  std::map<std::string, double> weights_;
  double norm_ = 0.0;
};

// TF-IEF weight of every distinct term of `terms` (already normalized).
TermVector build_term_vector(std::span<const std::string> terms, const CorpusTermStats& stats);

// (q . e) / (|q| |e|), 0 when either norm is 0; clamped to [0, 1].
double cosine(const TermVector& q, const TermVector& e);

}  // namespace tscdn
