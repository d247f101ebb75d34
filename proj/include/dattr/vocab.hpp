#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dattr/text.hpp"

namespace dattr {

// Token inventory with corpus frequencies. Ids are dense, 0..size()-1,
// assigned in first-seen order over the tokens that survive min_count.
// total_tokens() counts every token seen, before filtering.
class Vocab {
 public:
  Vocab() = default;

  static Vocab build(std::span<const Sentence> corpus, std::uint64_t min_count = 1);

  std::optional<std::uint32_t> id(std::string_view token) const;
  std::uint64_t frequency(std::string_view token) const;  // 0 when absent
  const std::string& token(std::uint32_t id) const { return tokens_.at(id); }

  std::size_t size() const { return tokens_.size(); }
  std::uint64_t total_tokens() const { return total_tokens_; }

  void write_tsv(std::ostream& out) const;
  static Vocab read_tsv(std::istream& in);

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> frequencies_;
  std::uint64_t total_tokens_ = 0;
};

}  // namespace dattr
