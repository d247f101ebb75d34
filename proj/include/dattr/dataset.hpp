#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dattr/vocab.hpp"

namespace dattr {

// One task instance: is `attribute` discriminative for `pivot` over
// `comparison`? The label is absent in unlabeled test files.
struct Triple {
  std::string pivot;
  std::string comparison;
  std::string attribute;
  std::optional<int> label;
};

struct Dataset {
  std::string name;
  std::vector<Triple> triples;

  std::size_t size() const { return triples.size(); }
  bool labeled() const;
};

// Comma-separated rows: pivot,comparison,attribute,label — or three fields
// throughout for unlabeled data. Mixed arity or a label outside {0,1} is an
// error naming the line.
Dataset load_triples(const std::string& path);
Dataset parse_triples(std::istream& in, const std::string& name);

void write_triples(std::ostream& out, const Dataset& dataset);

// The validation triples followed by k triples sampled from the training
// set uniformly without replacement under `seed`.
Dataset build_new_validation(const Dataset& train, const Dataset& val, std::size_t k,
                             std::uint64_t seed);

// Mean corpus frequency of each triple position; OOV words count 0.
struct PositionFrequencies {
  double pivot_mean = 0.0;
  double comparison_mean = 0.0;
  double attribute_mean = 0.0;
};

PositionFrequencies dataset_stats(const Dataset& dataset, const Vocab& vocab);

}  // namespace dattr
