#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dattr/text.hpp"
#include "dattr/vocab.hpp"

namespace dattr {

// Direction of a context relative to its target word.
enum class Direction : std::uint8_t { Left, Right };

inline char direction_tag(Direction d) { return d == Direction::Left ? 'L' : 'R'; }

// Symmetric windowed co-occurrence counts with unigram-free marginals.
//
// count(a, b) counts ordered in-window position pairs, so count(a, b) ==
// count(b, a) by construction and total_mass() is the number of ordered
// pairs. Tables built from a corpus additionally keep per-direction counts
// (how often a context sits left/right of its target), which the
// distributional graph consumes; tables loaded from TSV are symmetric-only.
class CoocTable {
 public:
  CoocTable() = default;

  // Counts all position pairs (i, j), i != j, |i - j| <= window with both
  // tokens in vocab. Sentence boundaries are hard.
  static CoocTable count(std::span<const Sentence> corpus, const Vocab& vocab,
                         int window);

  std::uint64_t count(std::string_view a, std::string_view b) const;
  std::uint64_t marginal(std::string_view w) const;
  std::uint64_t total_mass() const { return total_mass_; }
  int window() const { return window_; }

  bool has_directions() const { return directed_; }
  // How often `context` occurs on the given side of `target`.
  std::uint64_t directed_count(std::string_view target, std::string_view context,
                               Direction d) const;
  // Total mass of (context, direction) as a context event.
  std::uint64_t context_marginal(std::string_view context, Direction d) const;

  // Adds another shard's counts. Windows must match; the result is
  // bit-identical to counting the concatenated corpus in one pass.
  void merge(const CoocTable& other);

  std::size_t vocabulary_size() const { return tokens_.size(); }
  const std::string& token(std::uint32_t id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Visits every directed pair (target, context, direction, count).
  // Only valid for tables built from a corpus.
  void for_each_directed(
      const std::function<void(std::uint32_t target, std::uint32_t context,
                               Direction, std::uint64_t)>& fn) const;

  // TSV persistence: header "#window=<k> total=<T>", then
  // word<TAB>context<TAB>count rows sorted by (word, context); both
  // orientations of each pair are written. Direction detail is not
  // persisted, so a read-back table is symmetric-only.
  void write_tsv(std::ostream& out) const;
  static CoocTable read_tsv(std::istream& in);

 private:
  std::uint32_t intern(std::string_view token);
  std::int64_t find(std::string_view token) const;

  static std::uint64_t key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  bool directed_ = false;
  int window_ = 0;
  std::uint64_t total_mass_ = 0;

  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> tokens_;

  // directed_: right_[key(a,b)] = number of pairs where b follows a.
  // otherwise: sym_[key(a,b)], a <= b, holds count(a, b) directly.
  std::unordered_map<std::uint64_t, std::uint64_t> right_;
  std::unordered_map<std::uint64_t, std::uint64_t> sym_;

  std::vector<std::uint64_t> marginal_;
  std::vector<std::uint64_t> out_marginal_;  // pairs with the token first
  std::vector<std::uint64_t> in_marginal_;   // pairs with the token second
};

}  // namespace dattr
