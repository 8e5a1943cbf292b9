#include "index/posting.hpp"

namespace tscdn {

const PostingList* InvertedIndex::find(const std::string& term) const {
  auto it = dictionary.find(term);
  return it == dictionary.end() ? nullptr : &it->second;
}

std::size_t InvertedIndex::entry_count() const {
  std::size_t n = 0;
  for (const auto& [term, list] : dictionary) n += list.size();
  return n;
}

}  // namespace tscdn
