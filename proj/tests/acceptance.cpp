// Acceptance suite: one test case per criterion, each printing a single
// [PASS]/[FAIL] line. Oracles are brute-force recomputations; the end-to-end
// benchmark is fully synthetic and seeded.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <iostream>

#include "dattr/association.hpp"
#include "dattr/cooc.hpp"
#include "dattr/dataset.hpp"
#include "dattr/embeddings.hpp"
#include "dattr/features.hpp"
#include "dattr/gbt.hpp"
#include "dattr/graph.hpp"
#include "dattr/harness.hpp"
#include "dattr/metrics.hpp"
#include "dattr/patterns.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"
#include "test_util.hpp"

using namespace dattr;

namespace {

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {
    timer_start_ = std::chrono::steady_clock::now();
  }
  ~Criterion() {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - timer_start_)
                             .count();
    std::cout << (ok_ ? "[PASS]" : "[FAIL]") << " criterion " << id_ << ": " << title_
              << " (" << elapsed << " ms)" << std::endl;
  }
  void expect(bool condition) {
    ok_ &= condition;
    CHECK(condition);
  }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         timer_start_)
        .count();
  }

 private:
  int id_;
  std::string title_;
  bool ok_ = true;
  std::chrono::steady_clock::time_point timer_start_;
};

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_CASE("criterion 1") {
  Criterion c(1, "co-occurrence counts and measures match brute force on 100 corpora");
  Rng rng(1001);
  const int windows[3] = {1, 2, 5};

  for (int round = 0; round < 100; ++round) {
    const int window = windows[round % 3];
    const std::size_t sentences = 20 + rng.below(120);
    const std::size_t vocab_size = 10 + rng.below(40);
    auto corpus = testutil::random_corpus(rng, sentences, 12, vocab_size);

    std::size_t tokens = 0;
    for (const auto& s : corpus) tokens += s.tokens.size();
    c.expect(tokens <= 10000);

    Vocab vocab = Vocab::build(corpus, 1);
    CoocTable table = CoocTable::count(corpus, vocab, window);
    auto ref = oracle::brute_cooc(corpus, vocab, window);

    c.expect(table.total_mass() == ref.total);
    for (const auto& [pair, n] : ref.pairs)
      c.expect(table.count(pair.first, pair.second) == n);
    for (const auto& [w, m] : ref.marginal) c.expect(table.marginal(w) == m);

    // measures on every seen pair plus a sample of unseen ones
    for (const auto& [pair, n] : ref.pairs) {
      c.expect(close(ppmi(table, pair.first, pair.second),
                     oracle::brute_ppmi(ref, pair.first, pair.second), 1e-9));
      c.expect(close(plmi(table, pair.first, pair.second),
                     oracle::brute_plmi(ref, pair.first, pair.second), 1e-9));
    }
    for (int probe = 0; probe < 20; ++probe) {
      std::string a = "w" + std::to_string(rng.below(vocab_size + 5));
      std::string b = "w" + std::to_string(rng.below(vocab_size + 5));
      c.expect(close(ppmi(table, a, b), oracle::brute_ppmi(ref, a, b), 1e-9));
      c.expect(close(plmi(table, a, b), oracle::brute_plmi(ref, a, b), 1e-9));
    }
  }
  c.expect(c.seconds() < 60.0);
}

TEST_CASE("criterion 2") {
  Criterion c(2, "duplication leaves PPMI unchanged and scales PLMI by k");
  Rng rng(1002);
  auto corpus = testutil::random_corpus(rng, 60, 10, 20);
  Vocab vocab = Vocab::build(corpus, 1);
  CoocTable base = CoocTable::count(corpus, vocab, 2);

  for (std::size_t k : {2u, 5u}) {
    auto dup = testutil::duplicate_corpus(corpus, k);
    Vocab vd = Vocab::build(dup, 1);
    CoocTable t = CoocTable::count(dup, vd, 2);
    for (std::size_t a = 0; a < 20; ++a) {
      for (std::size_t b = 0; b < 20; ++b) {
        std::string wa = "w" + std::to_string(a), wb = "w" + std::to_string(b);
        c.expect(close(ppmi(t, wa, wb), ppmi(base, wa, wb), 1e-9));
        const double scaled = static_cast<double>(k) * plmi(base, wa, wb);
        const double got = plmi(t, wa, wb);
        c.expect(got == scaled || close(got, scaled, 1e-9 * std::max(1.0, scaled)));
      }
    }
  }
}

TEST_CASE("criterion 3") {
  Criterion c(3, "13-feature block algebra on 1000 random triples");
  Rng rng(1003);
  auto corpus = testutil::random_corpus(rng, 150, 10, 30);
  Vocab vocab = Vocab::build(corpus, 1);
  CoocTable table = CoocTable::count(corpus, vocab, 2);

  for (int round = 0; round < 1000; ++round) {
    std::string w1 = "w" + std::to_string(rng.below(32));
    std::string w2 = "w" + std::to_string(rng.below(32));
    std::string f = "w" + std::to_string(rng.below(32));
    auto ab = cooc_feature_block(table, w1, w2, f);
    auto ba = cooc_feature_block(table, w2, w1, f);
    c.expect(ab[2] == ab[7]);
    c.expect(ba[2] == ba[7]);
    for (int i = 10; i < 13; ++i) c.expect(ab[i] == -ba[i]);
    for (int i = 0; i < 5; ++i) {
      c.expect(ab[i] == ba[5 + i]);
      c.expect(ab[5 + i] == ba[i]);
    }
  }
}

TEST_CASE("criterion 4") {
  Criterion c(4, "graph, overlap, neighbors and 24-feature block match brute force");
  Rng rng(1004);

  for (int round = 0; round < 50; ++round) {
    const std::size_t vocab_size = 10 + rng.below(41);  // <= 50 words
    const std::size_t p = 1 + rng.below(20);            // <= 20
    auto corpus = testutil::random_corpus(rng, 30 + rng.below(50), 8, vocab_size);
    Vocab vocab = Vocab::build(corpus, 1);
    CoocTable table = CoocTable::count(corpus, vocab, 2);
    DistributionalGraph g = DistributionalGraph::build(table, p);
    auto ref = oracle::brute_graph(corpus, vocab, 2, p);

    c.expect(g.target_count() == ref.lists.size());
    for (const auto& [target, list] : ref.lists) {
      auto got = g.contexts(target);
      c.expect(got.size() == list.size());
      if (got.size() != list.size()) continue;
      for (std::size_t i = 0; i < list.size(); ++i) {
        c.expect(got[i].key.lexical == std::get<0>(list[i]));
        c.expect(got[i].key.tag == std::get<1>(list[i]));
        c.expect(got[i].score == std::get<2>(list[i]));
      }
    }

    for (int probe = 0; probe < 40; ++probe) {
      std::string a = "w" + std::to_string(rng.below(vocab_size));
      std::string b = "w" + std::to_string(rng.below(vocab_size));
      c.expect(g.overlap(a, b) == oracle::brute_overlap(ref, a, b));
    }
    for (std::size_t w = 0; w < vocab_size; ++w) {
      std::string token = "w" + std::to_string(w);
      c.expect(g.neighbors(token, 10) == oracle::brute_neighbors(ref, token, 10));
    }
    for (int probe = 0; probe < 30; ++probe) {
      // +4 lets unknown words through, exercising the sentinel paths
      std::string w1 = "w" + std::to_string(rng.below(vocab_size + 4));
      std::string w2 = "w" + std::to_string(rng.below(vocab_size + 4));
      std::string f = "w" + std::to_string(rng.below(vocab_size + 4));
      auto got = jobim_feature_block(g, w1, w2, f);
      auto expected = oracle::brute_jobim(ref, w1, w2, f);
      for (std::size_t i = 0; i < kJobimBlockWidth; ++i) c.expect(got[i] == expected[i]);
    }
  }
}

TEST_CASE("criterion 5") {
  Criterion c(5, "boosted trees: gain formula, separable fixture, monotone invariance");

  c.expect(close(split_gain(-2, 1, 2, 1, 1, 0), 2.0, 1e-12));
  c.expect(close(split_gain(0, 2, 0, 3, 1, 0.75), -0.75, 1e-12));
  c.expect(close(split_gain(3, 2, 3, 2, 0, 0.25), -0.25, 1e-12));

  // seeded 200-point separable fixture
  Rng rng(42);
  Matrix x(200, 2);
  std::vector<int> y;
  for (std::size_t i = 0; i < 200; ++i) {
    const int label = i < 100 ? 0 : 1;
    const double cx = label == 0 ? -2.0 : 2.0;
    x.row(i)[0] = cx + rng.unit() * 2.0 - 1.0;
    x.row(i)[1] = cx + rng.unit() * 2.0 - 1.0;
    y.push_back(label);
  }
  GbtParams params;
  params.rounds = 50;
  params.max_depth = 3;
  params.eta = 0.3;
  GbtModel model = train_gbt(x, y, params);

  std::size_t correct = 0;
  for (std::size_t i = 0; i < 200; ++i)
    correct += model.predict_label(x.row(i)) == y[i];
  c.expect(static_cast<double>(correct) / 200.0 >= 0.99);

  const auto loss_after = [&](std::size_t trees) {
    double total = 0.0;
    for (std::size_t i = 0; i < 200; ++i) {
      double margin = model.base_score;
      for (std::size_t t = 0; t < trees; ++t)
        margin += params.eta * model.trees[t].leaf_value(x.row(i));
      const double p = 1.0 / (1.0 + std::exp(-margin));
      total += y[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
    }
    return total / 200.0;
  };
  double prev = loss_after(0);
  for (std::size_t t = 1; t <= 10; ++t) {
    const double cur = loss_after(t);
    c.expect(cur <= prev + 1e-12);
    prev = cur;
  }

  // monotone-transform invariance on 20 random datasets
  Rng mrng(2005);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 25 + mrng.below(40);
    const std::size_t cols = 2 + mrng.below(4);
    Matrix a(n, cols);
    std::vector<int> labels;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < cols; ++j) a.row(i)[j] = mrng.unit() * 8.0 - 4.0;
      labels.push_back(static_cast<int>(mrng.below(2)));
    }
    if (std::count(labels.begin(), labels.end(), 1) == 0) labels[0] = 1;
    if (std::count(labels.begin(), labels.end(), 0) == 0) labels[0] = 0;

    GbtParams p5;
    p5.rounds = 4;
    p5.max_depth = 3;
    GbtModel base = train_gbt(a, labels, p5);

    Matrix b = a;
    const std::size_t col = mrng.below(cols);
    for (std::size_t i = 0; i < n; ++i) {
      double& v = b.row(i)[col];
      v = v * v * v + 2.0 * v;  // strictly increasing
    }
    GbtModel transformed = train_gbt(b, labels, p5);

    c.expect(base.trees.size() == transformed.trees.size());
    for (std::size_t t = 0; t < base.trees.size(); ++t) {
      const auto& ta = base.trees[t].nodes;
      const auto& tb = transformed.trees[t].nodes;
      c.expect(ta.size() == tb.size());
      if (ta.size() != tb.size()) continue;
      for (std::size_t k = 0; k < ta.size(); ++k) {
        c.expect(ta[k].feature == tb[k].feature);
        c.expect(ta[k].left == tb[k].left);
        c.expect(ta[k].right == tb[k].right);
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      c.expect(base.predict_margin(a.row(i)) == transformed.predict_margin(b.row(i)));
  }
  c.expect(c.seconds() < 30.0);
}

TEST_CASE("criterion 6") {
  Criterion c(6, "offset features bounded, swap behavior, concat widths");
  Rng rng(1006);

  std::ostringstream file;
  for (int i = 0; i < 60; ++i) {
    file << "t" << i;
    for (int d = 0; d < 8; ++d) file << ' ' << (rng.unit() * 6.0 - 3.0);
    file << '\n';
  }
  testutil::TempFile f(file.str());
  EmbeddingTable emb = EmbeddingTable::load(f.path());

  for (int round = 0; round < 10000; ++round) {
    std::string w1 = "t" + std::to_string(rng.below(64));  // a few OOV
    std::string w2 = "t" + std::to_string(rng.below(64));
    std::string feat = "t" + std::to_string(rng.below(64));
    auto b = offset_feature_block(emb, w1, w2, feat);
    for (double e : b) c.expect(e >= -1.0 - 1e-12 && e <= 1.0 + 1e-12);
    auto s = offset_feature_block(emb, w2, w1, feat);
    c.expect(close(s[0], -b[0], 1e-9));
    c.expect(close(s[1], b[1], 1e-9));
    c.expect(close(s[2], b[3], 1e-9));
    c.expect(close(s[3], b[2], 1e-9));
    c.expect(close(s[4], b[4], 1e-9));
  }

  c.expect(concat_block(emb, "t0", "t1", "t2").size() == 3 * emb.dimension());

  // d=300 gives the 905-wide embedding group: 5 offsets + 900 concat
  std::ostringstream big;
  for (const char* tok : {"x", "y", "z"}) {
    big << tok;
    for (int d = 0; d < 300; ++d) big << ' ' << 0.125 * (d % 5);
    big << '\n';
  }
  testutil::TempFile bigf(big.str());
  EmbeddingTable emb300 = EmbeddingTable::load(bigf.path());
  FeatureResources res;
  res.embeddings = &emb300;
  Triple t{"x", "y", "z", 1};
  auto fv = assemble_features(t, res, GroupMask::parse("offset,concat"));
  c.expect(fv.width() == 905);
  c.expect(group_width(FeatureGroup::Concat, res) == 900);
  c.expect(group_width(FeatureGroup::Offset, res) == 5);
}

namespace {

struct BenchmarkStack {
  testutil::Benchmark bench;
  Vocab vocab;
  CoocTable table;
  DistributionalGraph graph;
  SentenceIndex index;
  PatternVocab pattern_vocab;
  EmbeddingTable embeddings;
  FeatureResources res;
  Dataset train, test;
};

BenchmarkStack make_benchmark_stack(std::uint64_t seed) {
  BenchmarkStack s;
  s.bench = testutil::make_benchmark(seed, 60, 40, 2000);
  s.vocab = Vocab::build(s.bench.corpus, 1);
  s.table = CoocTable::count(s.bench.corpus, s.vocab, 2);
  s.graph = DistributionalGraph::build(s.table, 1000);
  s.index = SentenceIndex::build(s.bench.corpus);

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const Triple& t : s.bench.triples.triples) {
    pairs.emplace_back(t.pivot, t.attribute);
    pairs.emplace_back(t.comparison, t.attribute);
  }
  s.pattern_vocab = PatternVocab::build(s.index, pairs, 100);  // paper threshold

  testutil::TempFile emb(s.bench.embedding_text);
  s.embeddings = EmbeddingTable::load(emb.path());

  s.res.cooc = &s.table;
  s.res.graph = &s.graph;
  s.res.embeddings = &s.embeddings;
  s.res.pattern_vocab = &s.pattern_vocab;
  s.res.sentences = &s.index;

  auto [train, test] = testutil::split_dataset(s.bench.triples, 0.6);
  s.train = std::move(train);
  s.test = std::move(test);
  return s;
}

}  // namespace

TEST_CASE("criterion 7") {
  Criterion c(7, "synthetic end-to-end benchmark clears the F1 bars");
  BenchmarkStack s = make_benchmark_stack(777);
  c.expect(s.train.size() + s.test.size() == 2000);
  c.expect(s.pattern_vocab.size() >= 1);

  GbtParams params;  // defaults: 100 rounds, depth 6, eta 0.3

  // every report combo that includes the co-occurrence block
  auto combos = parse_combos(
      "cooc|cooc,offset,concat|cooc,jobim|cooc,offset,concat,jobim|"
      "cooc,offset,concat,jobim,patterns");
  AblationReport report = ablation_table(s.train, s.test, combos, s.res, params);
  for (const AblationRow& row : report.rows) {
    CAPTURE(row.name);
    c.expect(row.metrics.macro_f1 >= 0.85);
  }
  c.expect(report.rows.front().name == "1");
  c.expect(report.rows.front().metrics.macro_f1 >= 0.90);

  // random-label control stays at chance
  Dataset shuffled_train = s.train;
  Dataset shuffled_test = s.test;
  Rng label_rng(4242);
  std::vector<int> labels;
  for (const Triple& t : shuffled_train.triples) labels.push_back(*t.label);
  label_rng.shuffle(labels);
  for (std::size_t i = 0; i < labels.size(); ++i)
    shuffled_train.triples[i].label = labels[i];
  labels.clear();
  for (const Triple& t : shuffled_test.triples) labels.push_back(*t.label);
  label_rng.shuffle(labels);
  for (std::size_t i = 0; i < labels.size(); ++i)
    shuffled_test.triples[i].label = labels[i];

  GroupMask cooc_mask = GroupMask::parse("cooc");
  FeatureSet train_fs = assemble_dataset(shuffled_train, s.res, cooc_mask);
  FeatureSet test_fs = assemble_dataset(shuffled_test, s.res, cooc_mask);
  GbtModel control = train_gbt(train_fs.x, train_fs.labels, params);
  std::vector<int> pred;
  for (std::size_t i = 0; i < test_fs.x.rows; ++i)
    pred.push_back(control.predict_label(test_fs.x.row(i)));
  Metrics control_metrics = evaluate(pred, test_fs.labels);
  c.expect(control_metrics.macro_f1 >= 0.4);
  c.expect(control_metrics.macro_f1 <= 0.6);

  c.expect(c.seconds() < 300.0);
}

TEST_CASE("criterion 8") {
  Criterion c(8, "protocol fidelity: new-validation size, report structure, determinism");

  // 2,722 + 2,278 = 5,000
  Dataset train, val;
  train.name = "train";
  val.name = "val";
  for (int i = 0; i < 17782; ++i)
    train.triples.push_back({"p" + std::to_string(i), "c", "a", 1});
  for (int i = 0; i < 2722; ++i)
    val.triples.push_back({"v" + std::to_string(i), "c", "a", 0});
  Dataset nv = build_new_validation(train, val, 2278, 13);
  c.expect(nv.size() == 5000);
  Dataset nv2 = build_new_validation(train, val, 2278, 13);
  bool same = nv2.size() == nv.size();
  for (std::size_t i = 0; same && i < nv.size(); ++i)
    same = nv.triples[i].pivot == nv2.triples[i].pivot;
  c.expect(same);

  // ablation report over the default ladder: absolute rows per group plus
  // bracket-notation combos, byte-identical across two runs
  BenchmarkStack s = make_benchmark_stack(888);
  Dataset small_train, small_test;
  small_train.name = "bench-train";
  small_test.name = "bench-test";
  for (std::size_t i = 0; i < 300; ++i)
    small_train.triples.push_back(s.train.triples[i]);
  for (std::size_t i = 0; i < 200; ++i) small_test.triples.push_back(s.test.triples[i]);

  GbtParams params;
  params.rounds = 15;
  params.max_depth = 3;
  auto combos = default_ablation_combos();
  AblationReport a = ablation_table(small_train, small_test, combos, s.res, params);
  AblationReport b = ablation_table(small_train, small_test, combos, s.res, params);
  c.expect(a.to_csv() == b.to_csv());
  c.expect(a.to_text() == b.to_text());

  std::vector<std::string> names;
  for (const auto& row : a.rows) names.push_back(row.name);
  c.expect(names == std::vector<std::string>{"1", "2", "3", "6", "7", "1 & 3", "1 & 6",
                                             "1, 3 & 6", "1, 3, 6 & 7"});
  c.expect(a.rows[0].width == 13);
  c.expect(a.rows[1].width == 5);
  c.expect(a.rows[3].width == 24);
}

TEST_CASE("criterion 9") {
  Criterion c(9, "metrics match hand confusion matrices on 20 fixtures");

  const std::size_t fixtures[20][4] = {
      // tp, fp, fn, tn
      {3, 1, 2, 4},  {5, 0, 0, 5},  {0, 5, 5, 0},  {1, 1, 1, 1},  {10, 3, 2, 7},
      {0, 0, 4, 6},  {4, 6, 0, 0},  {2, 2, 3, 3},  {7, 1, 1, 7},  {1, 0, 9, 0},
      {0, 1, 0, 9},  {6, 2, 4, 8},  {3, 3, 3, 1},  {8, 0, 2, 0},  {0, 4, 1, 5},
      {2, 5, 5, 2},  {9, 1, 0, 10}, {1, 2, 3, 4},  {4, 4, 4, 4},  {5, 2, 1, 2},
  };

  for (const auto& f : fixtures) {
    const std::size_t tp = f[0], fp = f[1], fn = f[2], tn = f[3];
    std::vector<int> pred, gold;
    for (std::size_t i = 0; i < tp; ++i) { pred.push_back(1); gold.push_back(1); }
    for (std::size_t i = 0; i < fp; ++i) { pred.push_back(1); gold.push_back(0); }
    for (std::size_t i = 0; i < fn; ++i) { pred.push_back(0); gold.push_back(1); }
    for (std::size_t i = 0; i < tn; ++i) { pred.push_back(0); gold.push_back(0); }

    Metrics m = evaluate(pred, gold);
    c.expect(m.tp == tp && m.fp == fp && m.fn == fn && m.tn == tn);

    const auto div = [](double num, double den) { return den == 0.0 ? 0.0 : num / den; };
    const double p1 = div(static_cast<double>(tp), static_cast<double>(tp + fp));
    const double r1 = div(static_cast<double>(tp), static_cast<double>(tp + fn));
    const double f1_pos = div(2 * p1 * r1, p1 + r1);
    const double p0 = div(static_cast<double>(tn), static_cast<double>(tn + fn));
    const double r0 = div(static_cast<double>(tn), static_cast<double>(tn + fp));
    const double f1_neg = div(2 * p0 * r0, p0 + r0);

    c.expect(m.positive.f1 == f1_pos);
    c.expect(m.negative.f1 == f1_neg);
    c.expect(close(m.macro_f1, (f1_pos + f1_neg) / 2.0, 1e-12));
    c.expect(close(m.macro_f1, (m.positive.f1 + m.negative.f1) / 2.0, 1e-12));
    c.expect(m.accuracy ==
             static_cast<double>(tp + tn) / static_cast<double>(tp + fp + fn + tn));
  }
}
