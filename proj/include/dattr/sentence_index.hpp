#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dattr/text.hpp"

namespace dattr {

// Retrieval index over a sentence corpus: sentences by id plus an inverted
// index from token to the sorted, duplicate-free ids of sentences
// containing it.
class SentenceIndex {
 public:
  SentenceIndex() = default;

  static SentenceIndex build(std::span<const Sentence> corpus);

  std::size_t size() const { return sentences_.size(); }
  const Sentence& sentence(std::size_t id) const { return sentences_.at(id); }

  // Empty when the token never occurs.
  std::span<const std::uint32_t> postings(std::string_view token) const;

 private:
  std::vector<Sentence> sentences_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> postings_;
};

}  // namespace dattr
