#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "dattr/cooc.hpp"

namespace dattr {

inline constexpr std::size_t kCoocBlockWidth = 13;

// log2( count(w,c) * T / (marginal(w) * marginal(c)) ), or nullopt for an
// unseen pair. Probabilities come from co-occurrence mass, so marginals and
// total are internally consistent.
std::optional<double> pmi(const CoocTable& table, std::string_view w,
                          std::string_view c);

// max(0, pmi); 0 when the pair is unseen.
double ppmi(const CoocTable& table, std::string_view w, std::string_view c);

// max(0, count(w,c) * pmi); 0 when the pair is unseen.
double plmi(const CoocTable& table, std::string_view w, std::string_view c);

// The 13 co-occurrence features for a (w1, w2, feat) triple:
//   [0..4]   cnt(w1,f), cnt(w1), cnt(f), ppmi(w1,f), plmi(w1,f)
//   [5..9]   cnt(w2,f), cnt(w2), cnt(f), ppmi(w2,f), plmi(w2,f)
//   [10..12] cnt(w1,f)-cnt(w2,f), ppmi(w1,f)-ppmi(w2,f), plmi(w1,f)-plmi(w2,f)
// cnt(w) and cnt(f) are co-occurrence marginals. Missing words contribute 0.
std::array<double, kCoocBlockWidth> cooc_feature_block(const CoocTable& table,
                                                       std::string_view w1,
                                                       std::string_view w2,
                                                       std::string_view feat);

}  // namespace dattr
