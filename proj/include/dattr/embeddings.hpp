#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dattr {

inline constexpr std::size_t kOffsetBlockWidth = 5;

// Pretrained word vectors loaded from the text format: an optional
// "<count> <dim>" header, then "token v1 ... vd" rows. Out-of-vocabulary
// tokens map to the zero vector; every cosine touching one is 0.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  // Reads plain text, or gzip when the filename ends in ".gz".
  static EmbeddingTable load(const std::string& path);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return rows_.size(); }
  bool contains(std::string_view token) const;

  // The stored vector, or the zero vector for OOV tokens.
  std::vector<double> vector_or_zero(std::string_view token) const;

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> rows_;
};

// u.v / (|u||v|); 0 when either norm is 0. Throws on dimension mismatch.
double cosine(std::span<const double> u, std::span<const double> v);

// The five offset-cosine features:
//   [cos(w1-w2, f), cos(w1-f, w2-f), cos(w1-f, w2), cos(w2-f, w1), cos(w1, w2)]
std::array<double, kOffsetBlockWidth> offset_feature_block(const EmbeddingTable& emb,
                                                           std::string_view w1,
                                                           std::string_view w2,
                                                           std::string_view feat);

// vec(w1) ++ vec(w2) ++ vec(feat), zero vectors for OOV; length 3d.
std::vector<double> concat_block(const EmbeddingTable& emb, std::string_view w1,
                                 std::string_view w2, std::string_view feat);

}  // namespace dattr
