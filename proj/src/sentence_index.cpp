#include "dattr/sentence_index.hpp"

#include <string>

namespace dattr {

SentenceIndex SentenceIndex::build(std::span<const Sentence> corpus) {
  SentenceIndex idx;
  idx.sentences_.assign(corpus.begin(), corpus.end());
  for (std::size_t sid = 0; sid < idx.sentences_.size(); ++sid) {
    for (const std::string& tok : idx.sentences_[sid].tokens) {
      auto& posting = idx.postings_[tok];
      // Sentence ids arrive in order; collapse repeats within a sentence.
      if (posting.empty() || posting.back() != sid)
        posting.push_back(static_cast<std::uint32_t>(sid));
    }
  }
  return idx;
}

std::span<const std::uint32_t> SentenceIndex::postings(std::string_view token) const {
  auto it = postings_.find(std::string(token));
  if (it == postings_.end()) return {};
  return it->second;
}

}  // namespace dattr
