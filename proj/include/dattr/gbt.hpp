#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dattr {

// Dense row-major feature matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
};

struct GbtParams {
  int rounds = 100;
  int max_depth = 6;
  double eta = 0.3;
  double lambda = 1.0;            // L2 leaf regularizer
  double gamma = 0.0;             // split penalty
  double min_child_weight = 1.0;  // minimum hessian sum per child
  std::uint64_t seed = 0;         // reserved; training is fully deterministic
};

// Second-order gain of a split with child gradient/hessian sums (GL, HL)
// and (GR, HR): 0.5 * [GL^2/(HL+l) + GR^2/(HR+l) - (GL+GR)^2/(HL+HR+l)] - g.
double split_gain(double gl, double hl, double gr, double hr, double lambda,
                  double gamma);

// One regression-tree node. feature < 0 marks a leaf carrying `weight`;
// internal nodes route x[feature] < threshold to `left`, else `right`.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double weight = 0.0;

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;

  double leaf_value(std::span<const double> x) const;
};

// Boosted regression trees under binary logistic loss. Leaf weights are
// stored unscaled; prediction applies the learning rate:
//   margin(x) = base_score + sum_t eta * leaf_t(x).
class GbtModel {
 public:
  GbtParams params;
  double base_score = 0.0;
  std::size_t n_features = 0;
  std::vector<Tree> trees;

  double predict_margin(std::span<const double> x) const;
  double predict_prob(std::span<const double> x) const;
  int predict_label(std::span<const double> x) const;

  // Versioned JSON; see docs/formats.md. Round-trips bit-exactly.
  std::string to_json() const;
  static GbtModel from_json(const std::string& text);
};

// Exact greedy training: every feature, every midpoint between consecutive
// distinct sorted values; splits accepted only with positive gain and both
// children at or above min_child_weight. Deterministic: gain ties break to
// the lowest feature index, then the lowest threshold.
GbtModel train_gbt(const Matrix& x, std::span<const int> y, const GbtParams& params);

}  // namespace dattr
