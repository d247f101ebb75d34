#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dattr/graph.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace dattr;

namespace {

struct Built {
  std::vector<Sentence> corpus;
  Vocab vocab;
  CoocTable table;
};

Built build_from(Rng& rng, std::size_t sentences, std::size_t vocab_size, int window) {
  Built b;
  b.corpus = testutil::random_corpus(rng, sentences, 8, vocab_size);
  b.vocab = Vocab::build(b.corpus, 1);
  b.table = CoocTable::count(b.corpus, b.vocab, window);
  return b;
}

void check_graph_equals_oracle(const DistributionalGraph& g,
                               const oracle::BruteGraph& ref) {
  std::size_t ref_targets = ref.lists.size();
  CHECK(g.target_count() == ref_targets);
  for (const auto& [target, list] : ref.lists) {
    auto got = g.contexts(target);
    REQUIRE(got.size() == list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
      CHECK(got[i].key.lexical == std::get<0>(list[i]));
      CHECK(got[i].key.tag == std::get<1>(list[i]));
      CHECK(got[i].score == std::get<2>(list[i]));
    }
  }
}

}  // namespace

TEST_CASE("build_graph matches full-sort brute force on random corpora") {
  Rng rng(47);
  for (int round = 0; round < 8; ++round) {
    auto b = build_from(rng, 30, 30, 2);
    const std::size_t p = 10;
    DistributionalGraph g = DistributionalGraph::build(b.table, p);
    check_graph_equals_oracle(g, oracle::brute_graph(b.corpus, b.vocab, 2, p));
  }
}

TEST_CASE("p truncates to the max-salience context") {
  Rng rng(53);
  auto b = build_from(rng, 30, 12, 2);
  DistributionalGraph g1 = DistributionalGraph::build(b.table, 1);
  DistributionalGraph gbig = DistributionalGraph::build(b.table, 1000);
  for (const std::string& target : gbig.targets()) {
    auto full = gbig.contexts(target);
    auto top = g1.contexts(target);
    REQUIRE(top.size() == 1);
    CHECK(top[0].key == full[0].key);
    CHECK(top[0].score == full[0].score);
  }
}

TEST_CASE("all-salience-zero words are absent") {
  // One sentence of one repeated word: every context of "a" is "a" itself,
  // with expected co-occurrence equal to observed, so pmi = 0 and no
  // positive-salience context survives.
  std::vector<Sentence> corpus(1);
  corpus[0].tokens = {"a", "a", "a"};
  Vocab v = Vocab::build(corpus, 1);
  CoocTable t = CoocTable::count(corpus, v, 2);
  DistributionalGraph g = DistributionalGraph::build(t, 5);
  CHECK(g.contexts("a").empty());
  CHECK(g.target_count() == 0);
}

TEST_CASE("context_overlap") {
  Rng rng(59);
  auto b = build_from(rng, 40, 20, 2);
  DistributionalGraph g = DistributionalGraph::build(b.table, 10);
  auto ref = oracle::brute_graph(b.corpus, b.vocab, 2, 10);

  SUBCASE("self-overlap is the context count") {
    for (const std::string& w : g.targets())
      CHECK(g.overlap(w, w) == g.contexts(w).size());
  }
  SUBCASE("unknown words overlap nothing") {
    CHECK(g.overlap("ghost", g.targets().front()) == 0);
  }
  SUBCASE("matches brute-force set intersection") {
    for (std::size_t a = 0; a < 20; ++a)
      for (std::size_t c = 0; c < 20; ++c) {
        std::string wa = "w" + std::to_string(a), wc = "w" + std::to_string(c);
        CHECK(g.overlap(wa, wc) == oracle::brute_overlap(ref, wa, wc));
      }
  }
}

TEST_CASE("neighbors") {
  Rng rng(61);
  auto b = build_from(rng, 40, 20, 2);
  DistributionalGraph g = DistributionalGraph::build(b.table, 10);
  auto ref = oracle::brute_graph(b.corpus, b.vocab, 2, 10);

  SUBCASE("equals brute-force all-pairs ranking") {
    for (const std::string& w : g.targets()) {
      auto got = g.neighbors(w, 10);
      auto expected = oracle::brute_neighbors(ref, w, 10);
      CHECK(got == expected);
    }
  }
  SUBCASE("output is a prefix of the untruncated ranking") {
    for (const std::string& w : g.targets()) {
      auto full = g.neighbors(w, 1000);
      auto cut = g.neighbors(w, 3);
      REQUIRE(cut.size() <= 3);
      for (std::size_t i = 0; i < cut.size(); ++i) CHECK(cut[i] == full[i]);
    }
  }
  SUBCASE("isolated word has no neighbors") {
    CHECK(g.neighbors("ghost", 10).empty());
  }
}

TEST_CASE("identical context lists are mutual rank-1 neighbors") {
  // a and b never co-occur with each other but share identical contexts.
  std::vector<Sentence> corpus;
  for (int i = 0; i < 4; ++i) {
    Sentence s1, s2;
    s1.tokens = {"a", "ctx" + std::to_string(i)};
    s2.tokens = {"b", "ctx" + std::to_string(i)};
    corpus.push_back(s1);
    corpus.push_back(s2);
  }
  Vocab v = Vocab::build(corpus, 1);
  CoocTable t = CoocTable::count(corpus, v, 1);
  DistributionalGraph g = DistributionalGraph::build(t, 100);
  auto na = g.neighbors("a", 10);
  auto nb = g.neighbors("b", 10);
  REQUIRE(!na.empty());
  REQUIRE(!nb.empty());
  CHECK(na[0].first == "b");
  CHECK(nb[0].first == "a");
}

TEST_CASE("query_profile") {
  Rng rng(67);
  auto b = build_from(rng, 40, 15, 2);
  DistributionalGraph g = DistributionalGraph::build(b.table, 10);
  auto ref = oracle::brute_graph(b.corpus, b.vocab, 2, 10);

  SUBCASE("absent feat gives the sentinel profile") {
    FeatProfile p = g.query_profile(g.targets().front(), "nosuchword");
    CHECK_FALSE(p.found);
    CHECK(p.best_rank == -1);
    CHECK(p.worst_rank == -1);
    CHECK(p.total_score == 0.0);
    CHECK(p.occurrences == 0);
  }
  SUBCASE("matches a hand scan for every (target, feat)") {
    for (const std::string& target : g.targets()) {
      for (std::size_t f = 0; f < 15; ++f) {
        std::string feat = "w" + std::to_string(f);
        FeatProfile got = g.query_profile(target, feat);
        auto expected = oracle::brute_profile(ref, target, feat);
        CHECK(got.found == expected.found);
        CHECK(got.best_rank == expected.best);
        CHECK(got.worst_rank == expected.worst);
        CHECK(got.total_score == expected.total);
        CHECK(got.occurrences == expected.occ);
        if (got.found) {
          CHECK(got.best_rank >= 1);
          CHECK(got.best_rank <= got.worst_rank);
        }
      }
    }
  }
}

TEST_CASE("query_profile sums both direction tags") {
  // "x y" and "y x" put y on both sides of x.
  std::vector<Sentence> corpus(2);
  corpus[0].tokens = {"x", "y"};
  corpus[1].tokens = {"y", "x"};
  Vocab v = Vocab::build(corpus, 1);
  CoocTable t = CoocTable::count(corpus, v, 1);
  DistributionalGraph g = DistributionalGraph::build(t, 10);
  auto ctxs = g.contexts("x");
  if (ctxs.size() >= 2) {
    FeatProfile p = g.query_profile("x", "y");
    CHECK(p.occurrences == 2);
    CHECK(p.total_score == doctest::Approx(ctxs[0].score + ctxs[1].score));
  }
}

namespace {

// Six-node fixture for the direct-mode example: w1 has feat at rank 2 with
// score 3.0, w2 at rank 5 with score 1.0. Built by hand, not from a corpus.
DistributionalGraph fixture_graph() {
  std::ostringstream os;
  os << R"({"target":"w1","contexts":[["c1","L",5.0],["feat","L",3.0],["c2","R",2.5]]})" << "\n";
  os << R"({"target":"w2","contexts":[["c1","L",9.0],["c2","L",8.0],["c3","R",7.0],["c4","L",6.0],["feat","R",1.0]]})" << "\n";
  os << R"({"target":"feat","contexts":[["c9","L",4.0]]})" << "\n";
  std::istringstream is(os.str());
  return DistributionalGraph::read_jsonl(is);
}

}  // namespace

TEST_CASE("jobim direct mode on the hand fixture") {
  DistributionalGraph g = fixture_graph();
  auto block = jobim_feature_block(g, "w1", "w2", "feat");
  // direct sub-block: rank 2 beats rank 5; score 3.0 beats 1.0; chosen w1.
  CHECK(block[0] == 1.0);
  CHECK(block[1] == 1.0);
  CHECK(block[2] == 3.0);
  CHECK(block[3] == 2.0);
  CHECK(block[4] == 2.0);
  CHECK(block[5] == 1.0);
  CHECK(block[6] == 0.0);
  CHECK(block[7] == 0.0);
}

TEST_CASE("jobim block sentinels when feat is absent everywhere") {
  std::istringstream is(
      R"({"target":"a","contexts":[["c1","L",2.0]]})" "\n"
      R"({"target":"b","contexts":[["c2","R",1.0]]})" "\n");
  DistributionalGraph g = DistributionalGraph::read_jsonl(is);
  auto block = jobim_feature_block(g, "a", "b", "zzz");
  for (std::size_t mode = 0; mode < 3; ++mode) {
    const std::size_t base = 8 * mode;
    CHECK(block[base + 0] == 0.0);
    CHECK(block[base + 1] == 0.0);
    CHECK(block[base + 2] == 0.0);
    CHECK(block[base + 3] == -1.0);
    CHECK(block[base + 4] == -1.0);
    CHECK(block[base + 5] == 0.0);
  }
  // no neighbor produced a hit in the indirection modes
  CHECK(block[8 + 6] == -1.0);
  CHECK(block[16 + 7] == -1.0);
  // slots unused by a mode stay 0
  CHECK(block[0 + 6] == 0.0);
  CHECK(block[0 + 7] == 0.0);
  CHECK(block[8 + 7] == 0.0);
  CHECK(block[16 + 6] == 0.0);
}

TEST_CASE("jobim swap flips prediction-by-score when scores differ") {
  DistributionalGraph g = fixture_graph();
  auto ab = jobim_feature_block(g, "w1", "w2", "feat");
  auto ba = jobim_feature_block(g, "w2", "w1", "feat");
  CHECK(ab[1] == 1.0 - ba[1]);
}

TEST_CASE("jobim block matches the brute oracle on random graphs") {
  Rng rng(71);
  for (int round = 0; round < 6; ++round) {
    auto b = build_from(rng, 40, 20, 2);
    DistributionalGraph g = DistributionalGraph::build(b.table, 10);
    auto ref = oracle::brute_graph(b.corpus, b.vocab, 2, 10);
    for (std::size_t i = 0; i < 20; ++i) {
      std::string w1 = "w" + std::to_string(rng.below(20));
      std::string w2 = "w" + std::to_string(rng.below(20));
      std::string feat = "w" + std::to_string(rng.below(20));
      auto got = jobim_feature_block(g, w1, w2, feat);
      auto expected = oracle::brute_jobim(ref, w1, w2, feat);
      for (std::size_t k = 0; k < kJobimBlockWidth; ++k) {
        CAPTURE(w1);
        CAPTURE(w2);
        CAPTURE(feat);
        CAPTURE(k);
        CHECK(got[k] == expected[k]);
      }
    }
  }
}

TEST_CASE("graph serialization is deterministic and round-trips") {
  Rng rng(73);
  auto b = build_from(rng, 40, 15, 2);
  DistributionalGraph g = DistributionalGraph::build(b.table, 10);

  std::ostringstream s1, s2;
  g.write_jsonl(s1);
  DistributionalGraph g2 = DistributionalGraph::build(b.table, 10);
  g2.write_jsonl(s2);
  CHECK(s1.str() == s2.str());

  std::istringstream is(s1.str());
  DistributionalGraph back = DistributionalGraph::read_jsonl(is);
  std::ostringstream s3;
  back.write_jsonl(s3);
  CHECK(s3.str() == s1.str());
}
