#pragma once

// Generator for the synthetic discriminative-attribute benchmark: a corpus
// where each entity co-occurs with exactly its own attributes, triples whose
// labels follow from those attribute sets, and embeddings that encode the
// sets as indicator vectors.

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dattr/dataset.hpp"
#include "dattr/rng.hpp"
#include "dattr/text.hpp"

namespace dattr::testutil {

struct Benchmark {
  std::vector<Sentence> corpus;
  Dataset triples;             // labeled, roughly 50/50
  std::string embedding_text;  // dimension = number of attributes
};

inline Benchmark make_benchmark(std::uint64_t seed, std::size_t n_entities = 60,
                                std::size_t n_attrs = 40,
                                std::size_t n_triples = 2000) {
  Rng rng(seed);
  Benchmark b;

  const auto entity = [](std::size_t i) { return "ent" + std::to_string(i); };
  const auto attr = [](std::size_t j) { return "attr" + std::to_string(j); };

  // Attribute sets: each entity holds each attribute with probability 1/4,
  // adjusted so every entity has at least one attribute and one gap.
  std::vector<std::set<std::size_t>> owns(n_entities);
  for (std::size_t i = 0; i < n_entities; ++i) {
    for (std::size_t j = 0; j < n_attrs; ++j)
      if (rng.below(4) == 0) owns[i].insert(j);
    if (owns[i].empty()) owns[i].insert(rng.below(n_attrs));
    if (owns[i].size() == n_attrs) owns[i].erase(rng.below(n_attrs));
  }

  // Corpus: several sentences per (entity, attribute) fact, two surface
  // shapes so patterns have something to index, plus per-entity noise.
  for (std::size_t i = 0; i < n_entities; ++i) {
    for (std::size_t j : owns[i]) {
      const std::size_t copies = 3 + rng.below(4);
      for (std::size_t c = 0; c < copies; ++c) {
        Sentence s;
        if (rng.below(2) == 0)
          s.tokens = {"the", entity(i), "has", attr(j)};
        else
          s.tokens = {entity(i), "with", attr(j), "here"};
        b.corpus.push_back(std::move(s));
      }
    }
    Sentence noise;
    noise.tokens = {"the", entity(i), "is", "around"};
    b.corpus.push_back(std::move(noise));
  }

  // Triples: half positive (attribute of the pivot, not of the comparison),
  // half negative (comparison-only, shared, or absent attributes).
  b.triples.name = "synthetic";
  std::size_t made = 0;
  std::size_t guard = 0;
  while (made < n_triples && ++guard < n_triples * 200) {
    const std::size_t i = rng.below(n_entities);
    std::size_t k = rng.below(n_entities);
    if (k == i) continue;
    const bool want_positive = made % 2 == 0;

    std::vector<std::size_t> candidates;
    if (want_positive) {
      for (std::size_t j : owns[i])
        if (!owns[k].count(j)) candidates.push_back(j);
    } else {
      const std::uint64_t kind = rng.below(3);
      for (std::size_t j = 0; j < n_attrs; ++j) {
        const bool in_i = owns[i].count(j) > 0;
        const bool in_k = owns[k].count(j) > 0;
        if (kind == 0 && !in_i && in_k) candidates.push_back(j);        // comparison-only
        else if (kind == 1 && in_i && in_k) candidates.push_back(j);    // shared
        else if (kind == 2 && !in_i && !in_k) candidates.push_back(j);  // absent
      }
    }
    if (candidates.empty()) continue;
    const std::size_t j = candidates[rng.below(candidates.size())];
    b.triples.triples.push_back(
        {entity(i), entity(k), attr(j), want_positive ? 1 : 0});
    ++made;
  }

  // Embeddings: attribute vectors are basis vectors, entity vectors are
  // noisy indicators of their attribute sets.
  std::ostringstream emb;
  for (std::size_t j = 0; j < n_attrs; ++j) {
    emb << attr(j);
    for (std::size_t d = 0; d < n_attrs; ++d)
      emb << ' ' << (d == j ? 1.0 : 0.0) + (rng.unit() - 0.5) * 0.01;
    emb << '\n';
  }
  for (std::size_t i = 0; i < n_entities; ++i) {
    emb << entity(i);
    for (std::size_t d = 0; d < n_attrs; ++d)
      emb << ' ' << (owns[i].count(d) ? 1.0 : 0.0) + (rng.unit() - 0.5) * 0.01;
    emb << '\n';
  }
  b.embedding_text = emb.str();
  return b;
}

inline std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double train_frac) {
  Dataset train, test;
  train.name = d.name + "-train";
  test.name = d.name + "-test";
  const auto cut = static_cast<std::size_t>(static_cast<double>(d.size()) * train_frac);
  for (std::size_t i = 0; i < d.size(); ++i)
    (i < cut ? train : test).triples.push_back(d.triples[i]);
  return {train, test};
}

}  // namespace dattr::testutil
