#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dattr/association.hpp"
#include "dattr/dataset.hpp"
#include "dattr/embeddings.hpp"
#include "dattr/gbt.hpp"
#include "dattr/graph.hpp"
#include "dattr/patterns.hpp"

namespace dattr {

// The five feature groups in their fixed concatenation order.
enum class FeatureGroup : std::uint8_t { Cooc = 0, Offset, Concat, Jobim, Patterns };

inline constexpr std::array<FeatureGroup, 5> kAllGroups = {
    FeatureGroup::Cooc, FeatureGroup::Offset, FeatureGroup::Concat,
    FeatureGroup::Jobim, FeatureGroup::Patterns};

const char* group_name(FeatureGroup g);

// Subset of enabled groups. Concatenation order is fixed regardless of the
// order groups were enabled in.
class GroupMask {
 public:
  GroupMask() = default;

  GroupMask& enable(FeatureGroup g) { bits_ |= bit(g); return *this; }
  bool contains(FeatureGroup g) const { return bits_ & bit(g); }
  bool empty() const { return bits_ == 0; }
  std::vector<FeatureGroup> groups() const;

  // "cooc,offset,concat,jobim,patterns" (any subset, any order).
  static GroupMask parse(std::string_view csv);
  std::string to_string() const;

  friend bool operator==(const GroupMask&, const GroupMask&) = default;

 private:
  static std::uint8_t bit(FeatureGroup g) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(g));
  }
  std::uint8_t bits_ = 0;
};

// Everything feature assembly may need. Only the resources for enabled
// groups have to be present; a missing one is a ConfigError.
struct FeatureResources {
  const CoocTable* cooc = nullptr;              // cooc group
  const DistributionalGraph* graph = nullptr;   // jobim group
  const EmbeddingTable* embeddings = nullptr;   // offset + concat groups
  const PatternVocab* pattern_vocab = nullptr;  // patterns group
  const SentenceIndex* sentences = nullptr;     // patterns group
  PatternBlockMode pattern_block = PatternBlockMode::Diff;
  PatternExtractOptions pattern_options;
};

std::size_t group_width(FeatureGroup g, const FeatureResources& res);

struct FeatureVector {
  // (group name, width) for each enabled group, in fixed order.
  std::vector<std::pair<std::string, std::size_t>> groups;
  std::vector<double> values;

  std::size_t width() const { return values.size(); }
};

FeatureVector assemble_features(const Triple& triple, const FeatureResources& res,
                                const GroupMask& mask);

// Assembles a whole dataset into a dense matrix plus labels (-1 when the
// dataset is unlabeled).
struct FeatureSet {
  std::vector<std::pair<std::string, std::size_t>> groups;
  Matrix x;
  std::vector<int> labels;
  bool labeled = false;
};

FeatureSet assemble_dataset(const Dataset& dataset, const FeatureResources& res,
                            const GroupMask& mask);

// Sparse text format: a '#' header line with JSON {"groups": [[name, width],
// ...], "width": W}, then one "label idx:value ..." row per example with
// zero entries omitted. Values round-trip exactly.
void write_features(std::ostream& out, const FeatureSet& fs);
FeatureSet read_features(std::istream& in);

}  // namespace dattr
