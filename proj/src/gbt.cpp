#include "dattr/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "dattr/error.hpp"

namespace dattr {

namespace {

constexpr double kPriorEps = 1e-12;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double clamped_log_odds(double p) {
  p = std::clamp(p, kPriorEps, 1.0 - kPriorEps);
  return std::log(p / (1.0 - p));
}

}  // namespace

double split_gain(double gl, double hl, double gr, double hr, double lambda,
                  double gamma) {
  const double g = gl + gr;
  const double h = hl + hr;
  return 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) -
                g * g / (h + lambda)) -
         gamma;
}

double Tree::leaf_value(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const TreeNode& n = nodes[i];
    i = x[static_cast<std::size_t>(n.feature)] < n.threshold
            ? static_cast<std::size_t>(n.left)
            : static_cast<std::size_t>(n.right);
  }
  return nodes[i].weight;
}

double GbtModel::predict_margin(std::span<const double> x) const {
  if (x.size() != n_features)
    throw Error("predict: expected " + std::to_string(n_features) + " features, got " +
                std::to_string(x.size()));
  double margin = base_score;
  for (const Tree& t : trees) margin += params.eta * t.leaf_value(x);
  return margin;
}

double GbtModel::predict_prob(std::span<const double> x) const {
  return sigmoid(predict_margin(x));
}

int GbtModel::predict_label(std::span<const double> x) const {
  return predict_prob(x) >= 0.5 ? 1 : 0;
}

namespace {

struct BestSplit {
  bool valid = false;
  int feature = -1;
  double threshold = 0.0;
  double gain = -std::numeric_limits<double>::infinity();
  double gl = 0.0, hl = 0.0;

  // Tie-break: higher gain, then lower feature index, then lower threshold.
  bool beats(const BestSplit& o) const {
    if (!o.valid) return true;
    if (gain != o.gain) return gain > o.gain;
    if (feature != o.feature) return feature < o.feature;
    return threshold < o.threshold;
  }
};

class TreeGrower {
 public:
  TreeGrower(const Matrix& x, std::span<const double> grad,
             std::span<const double> hess, const GbtParams& params)
      : x_(x), grad_(grad), hess_(hess), params_(params) {}

  Tree grow() {
    Tree tree;
    std::vector<std::uint32_t> rows(x_.rows);
    for (std::uint32_t i = 0; i < x_.rows; ++i) rows[i] = i;
    build(tree, std::move(rows), 0);
    return tree;
  }

 private:
  // Appends the subtree over `rows` to tree.nodes, returning its root index.
  int build(Tree& tree, std::vector<std::uint32_t> rows, int depth) {
    double g = 0.0, h = 0.0;
    for (std::uint32_t r : rows) {
      g += grad_[r];
      h += hess_[r];
    }

    BestSplit best;
    if (depth < params_.max_depth) best = find_split(rows, g, h);

    const int node_index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (!best.valid) {
      tree.nodes[node_index].weight = -g / (h + params_.lambda);
      return node_index;
    }

    std::vector<std::uint32_t> left, right;
    left.reserve(rows.size());
    for (std::uint32_t r : rows) {
      const double v = x_.row(r)[static_cast<std::size_t>(best.feature)];
      (v < best.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    tree.nodes[node_index].feature = best.feature;
    tree.nodes[node_index].threshold = best.threshold;
    const int l = build(tree, std::move(left), depth + 1);
    const int r = build(tree, std::move(right), depth + 1);
    tree.nodes[node_index].left = l;
    tree.nodes[node_index].right = r;
    return node_index;
  }

  BestSplit find_split(const std::vector<std::uint32_t>& rows, double g_total,
                       double h_total) {
    BestSplit best;
    std::vector<std::pair<double, std::uint32_t>> sorted;
    sorted.reserve(rows.size());

    for (std::size_t f = 0; f < x_.cols; ++f) {
      sorted.clear();
      for (std::uint32_t r : rows) sorted.emplace_back(x_.row(r)[f], r);
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      double gl = 0.0, hl = 0.0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        gl += grad_[sorted[i].second];
        hl += hess_[sorted[i].second];
        const double v = sorted[i].first;
        const double next = sorted[i + 1].first;
        if (v == next) continue;  // split only between distinct values

        const double gr = g_total - gl;
        const double hr = h_total - hl;
        if (hl < params_.min_child_weight || hr < params_.min_child_weight) continue;

        const double threshold = v + (next - v) / 2.0;
        if (!(v < threshold)) continue;  // midpoint collapsed onto v

        BestSplit cand;
        cand.valid = true;
        cand.feature = static_cast<int>(f);
        cand.threshold = threshold;
        cand.gain = split_gain(gl, hl, gr, hr, params_.lambda, params_.gamma);
        cand.gl = gl;
        cand.hl = hl;
        if (cand.gain > 0.0 && cand.beats(best)) best = cand;
      }
    }
    return best;
  }

  const Matrix& x_;
  std::span<const double> grad_;
  std::span<const double> hess_;
  const GbtParams& params_;
};

}  // namespace

GbtModel train_gbt(const Matrix& x, std::span<const int> y, const GbtParams& params) {
  if (x.rows == 0 || x.rows != y.size())
    throw Error("train: need one label per feature row");
  if (params.rounds < 1 || params.max_depth < 1 || params.eta <= 0.0 || params.eta > 1.0)
    throw ConfigError("bad training parameters");
  for (double v : x.data)
    if (!std::isfinite(v)) throw Error("train: features must be finite");

  GbtModel model;
  model.params = params;
  model.n_features = x.cols;

  std::size_t positives = 0;
  for (int label : y) {
    if (label != 0 && label != 1) throw Error("train: labels must be 0 or 1");
    positives += static_cast<std::size_t>(label);
  }
  model.base_score =
      clamped_log_odds(static_cast<double>(positives) / static_cast<double>(y.size()));

  // Degenerate but valid: a constant model.
  if (positives == 0 || positives == y.size()) return model;

  std::vector<double> margin(x.rows, model.base_score);
  std::vector<double> grad(x.rows), hess(x.rows);
  for (int round = 0; round < params.rounds; ++round) {
    for (std::size_t i = 0; i < x.rows; ++i) {
      const double p = sigmoid(margin[i]);
      grad[i] = p - static_cast<double>(y[i]);
      hess[i] = p * (1.0 - p);
    }
    Tree tree = TreeGrower(x, grad, hess, params).grow();
    for (std::size_t i = 0; i < x.rows; ++i)
      margin[i] += params.eta * tree.leaf_value(x.row(i));
    model.trees.push_back(std::move(tree));
  }
  return model;
}

std::string GbtModel::to_json() const {
  nlohmann::json j;
  j["version"] = 1;
  j["params"] = {{"rounds", params.rounds},
                 {"max_depth", params.max_depth},
                 {"eta", params.eta},
                 {"lambda", params.lambda},
                 {"gamma", params.gamma},
                 {"min_child_weight", params.min_child_weight},
                 {"seed", params.seed}};
  j["base_score"] = base_score;
  j["n_features"] = n_features;
  auto& jt = j["trees"] = nlohmann::json::array();
  for (const Tree& t : trees) {
    nlohmann::json jn = nlohmann::json::array();
    for (const TreeNode& n : t.nodes)
      jn.push_back({n.feature, n.threshold, n.left, n.right, n.weight});
    jt.push_back({{"nodes", std::move(jn)}});
  }
  return j.dump();
}

GbtModel GbtModel::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model file: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != 1)
      throw ParseError("unsupported model version");
    GbtModel m;
    const auto& p = j.at("params");
    m.params.rounds = p.at("rounds").get<int>();
    m.params.max_depth = p.at("max_depth").get<int>();
    m.params.eta = p.at("eta").get<double>();
    m.params.lambda = p.at("lambda").get<double>();
    m.params.gamma = p.at("gamma").get<double>();
    m.params.min_child_weight = p.at("min_child_weight").get<double>();
    m.params.seed = p.at("seed").get<std::uint64_t>();
    m.base_score = j.at("base_score").get<double>();
    m.n_features = j.at("n_features").get<std::size_t>();
    for (const auto& jt : j.at("trees")) {
      Tree t;
      for (const auto& jn : jt.at("nodes")) {
        if (!jn.is_array() || jn.size() != 5) throw ParseError("bad tree node");
        TreeNode n;
        n.feature = jn[0].get<int>();
        n.threshold = jn[1].get<double>();
        n.left = jn[2].get<int>();
        n.right = jn[3].get<int>();
        n.weight = jn[4].get<double>();
        t.nodes.push_back(n);
      }
      const auto count = static_cast<int>(t.nodes.size());
      if (t.nodes.empty()) throw ParseError("empty tree");
      for (int i = 0; i < count; ++i) {
        const TreeNode& n = t.nodes[static_cast<std::size_t>(i)];
        if (n.is_leaf()) continue;
        // children sit strictly after their parent, so walks terminate
        if (n.left <= i || n.left >= count || n.right <= i || n.right >= count)
          throw ParseError("tree child index out of range");
        if (static_cast<std::size_t>(n.feature) >= m.n_features)
          throw ParseError("tree split feature out of range");
      }
      m.trees.push_back(std::move(t));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model file: ") + e.what());
  }
}

}  // namespace dattr
