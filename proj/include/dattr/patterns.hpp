#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dattr/sentence_index.hpp"

namespace dattr {

// A connective sequence observed strictly between two matched words,
// independent of which of the two came first. Token-level patterns hold the
// surface tokens; POS-level ones hold the tags (only emitted for tagged
// sentences).
struct Pattern {
  enum class Level : std::uint8_t { Token, Pos };

  Level level = Level::Token;
  std::vector<std::string> sequence;

  friend auto operator<=>(const Pattern&, const Pattern&) = default;
};

struct PatternExtractOptions {
  std::size_t cap = 10000;   // sentences scanned per word pair
  std::size_t max_gap = 5;   // longest between-sequence kept
};

// Multiset of patterns connecting x and y, over at most `cap` shared
// sentences in ascending id order. Every in-sentence position pair of the
// two words contributes. Symmetric in (x, y).
std::map<Pattern, std::uint64_t> extract_patterns(const SentenceIndex& index,
                                                  std::string_view x,
                                                  std::string_view y,
                                                  const PatternExtractOptions& opt = {});

// Patterns whose aggregate frequency over the training (word, feat) pairs
// strictly exceeds the threshold, with dense column indices assigned in
// descending-frequency order (ties lexicographic).
class PatternVocab {
 public:
  PatternVocab() = default;

  // Duplicate pairs in `pairs` are scanned once.
  static PatternVocab build(const SentenceIndex& index,
                            std::span<const std::pair<std::string, std::string>> pairs,
                            std::uint64_t threshold,
                            const PatternExtractOptions& opt = {});

  std::size_t size() const { return patterns_.size(); }
  std::uint64_t threshold() const { return threshold_; }
  std::size_t max_gap() const { return max_gap_; }

  std::optional<std::uint32_t> index(const Pattern& p) const;
  const Pattern& pattern(std::uint32_t index) const { return patterns_.at(index); }
  std::uint64_t frequency(std::uint32_t index) const { return frequencies_.at(index); }

  // TSV: "#threshold=<t> max_gap=<g>", then pattern<TAB>level<TAB>frequency<TAB>index.
  void write_tsv(std::ostream& out) const;
  static PatternVocab read_tsv(std::istream& in);

 private:
  std::uint64_t threshold_ = 0;
  std::size_t max_gap_ = 5;
  std::vector<Pattern> patterns_;
  std::vector<std::uint64_t> frequencies_;
  std::map<Pattern, std::uint32_t> index_;
};

// How the (w1, feat) and (w2, feat) pattern counts combine into one block.
enum class PatternBlockMode : std::uint8_t {
  Diff,     // freq(w1,f) - freq(w2,f), width |vocab|
  W1,       // freq(w1,f) alone, width |vocab|
  Stacked,  // [freq(w1,f) ; freq(w2,f)], width 2|vocab|
};

std::size_t pattern_block_width(const PatternVocab& vocab, PatternBlockMode mode);

std::vector<double> pattern_feature_block(const PatternVocab& vocab,
                                          const SentenceIndex& index,
                                          std::string_view w1, std::string_view w2,
                                          std::string_view feat, PatternBlockMode mode,
                                          const PatternExtractOptions& opt = {});

}  // namespace dattr
