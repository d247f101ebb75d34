#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dattr/cooc.hpp"

namespace dattr {

inline constexpr std::size_t kJobimBlockWidth = 24;
inline constexpr std::size_t kNeighborScan = 10;

// A context a target word was seen with: the lexical item plus a structural
// tag, here the L/R direction bucket. The same lexical item can appear under
// both tags with independent scores.
struct ContextKey {
  std::string lexical;
  char tag = 'L';

  friend auto operator<=>(const ContextKey& a, const ContextKey& b) {
    if (auto c = a.lexical <=> b.lexical; c != 0) return c;
    return a.tag <=> b.tag;
  }
  friend bool operator==(const ContextKey&, const ContextKey&) = default;
};

struct ScoredContext {
  ContextKey key;
  double score = 0.0;
};

// How a lexical feature shows up in one target's ranked context list.
// Ranks are 1-based; -1 and 0 are the not-found sentinels.
struct FeatProfile {
  bool found = false;
  int best_rank = -1;
  int worst_rank = -1;
  double total_score = 0.0;
  int occurrences = 0;
};

// Per-target ranked lists of salient contexts, truncated to the top p by
// PLMI salience (ties broken by ContextKey order). Word similarity is the
// overlap count of the truncated context sets.
class DistributionalGraph {
 public:
  DistributionalGraph() = default;

  // Requires a table built from a corpus (direction detail present).
  static DistributionalGraph build(const CoocTable& table, std::size_t p);

  std::size_t p() const { return p_; }
  std::size_t target_count() const { return targets_.size(); }
  // Targets in lexicographic order.
  const std::vector<std::string>& targets() const { return targets_; }

  // Rank order; empty span for unknown words.
  std::span<const ScoredContext> contexts(std::string_view target) const;

  // |contexts(a) ∩ contexts(b)| as ContextKey sets.
  std::size_t overlap(std::string_view a, std::string_view b) const;

  // Words sharing at least one context with w, excluding w itself, sorted
  // by overlap descending then lexicographic, truncated to k.
  std::vector<std::pair<std::string, std::size_t>> neighbors(std::string_view w,
                                                             std::size_t k) const;

  // Scans target's ranked list for entries whose lexical item equals feat,
  // under any structural tag.
  FeatProfile query_profile(std::string_view target, std::string_view feat) const;

  // Newline-delimited JSON, one {"target": ..., "contexts": [[lexical, tag,
  // score], ...]} record per target in lexicographic order. Identical
  // graphs serialize to identical bytes.
  void write_jsonl(std::ostream& out) const;
  static DistributionalGraph read_jsonl(std::istream& in);

 private:
  void finalize();

  std::size_t p_ = 0;
  std::vector<std::string> targets_;
  std::vector<std::vector<ScoredContext>> lists_;
  std::unordered_map<std::string, std::uint32_t> target_ids_;
  // context key string form -> target ids, for neighbor candidate lookup
  std::unordered_map<std::string, std::vector<std::uint32_t>> inverted_;
};

// The 24 JoBimText-style features for (w1, w2, feat): three query modes
// [direct, word-neighbor, feat-neighbor] x 8 features [prediction_by_rank,
// prediction_by_score, total_score, top_rank, bottom_rank, num_occurrences,
// which_neighbor, which_feat_neighbor].
std::array<double, kJobimBlockWidth> jobim_feature_block(
    const DistributionalGraph& g, std::string_view w1, std::string_view w2,
    std::string_view feat);

}  // namespace dattr
