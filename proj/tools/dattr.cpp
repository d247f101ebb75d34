// Command-line frontend for the discriminative-attribute pipeline: corpus
// statistics, distributional graph, pattern vocabulary, feature extraction,
// boosted-tree training and the evaluation/ablation protocol.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dattr/association.hpp"
#include "dattr/cooc.hpp"
#include "dattr/dataset.hpp"
#include "dattr/embeddings.hpp"
#include "dattr/error.hpp"
#include "dattr/features.hpp"
#include "dattr/gbt.hpp"
#include "dattr/graph.hpp"
#include "dattr/harness.hpp"
#include "dattr/metrics.hpp"
#include "dattr/patterns.hpp"
#include "dattr/sentence_index.hpp"
#include "dattr/text.hpp"
#include "dattr/vocab.hpp"

namespace {

using dattr::ConfigError;
using dattr::IoError;
using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read: " + path);
  return in;
}

std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

dattr::PatternBlockMode parse_block_mode(const std::string& s) {
  if (s == "diff") return dattr::PatternBlockMode::Diff;
  if (s == "w1") return dattr::PatternBlockMode::W1;
  if (s == "stacked") return dattr::PatternBlockMode::Stacked;
  throw ConfigError("pattern block mode must be diff, w1 or stacked");
}

// Options shared by the commands that read a corpus.
struct CorpusOpts {
  std::string path;
  bool tagged = false;
  int window = 2;
  std::uint64_t min_count = 1;

  void attach(CLI::App* cmd, bool with_counting = true) {
    cmd->add_option("--corpus", path, "corpus file, one sentence per line")->required();
    cmd->add_flag("--tagged", tagged, "corpus fields are token/POS");
    if (with_counting) {
      cmd->add_option("--window", window, "co-occurrence window")->check(CLI::PositiveNumber);
      cmd->add_option("--min-count", min_count, "vocabulary frequency cutoff");
    }
  }

  json meta() const {
    return {{"path", path},
            {"sha256", dattr::sha256_file(path)},
            {"tagged", tagged},
            {"window", window},
            {"min_count", min_count}};
  }
};

struct GbtOpts {
  dattr::GbtParams params;

  void attach(CLI::App* cmd, bool with_seed = true) {
    cmd->add_option("--rounds", params.rounds, "boosting rounds");
    cmd->add_option("--max-depth", params.max_depth, "tree depth limit");
    cmd->add_option("--eta", params.eta, "learning rate");
    cmd->add_option("--lambda", params.lambda, "L2 leaf regularizer");
    cmd->add_option("--gamma", params.gamma, "split penalty");
    cmd->add_option("--min-child-weight", params.min_child_weight,
                    "minimum hessian sum per child");
    if (with_seed) cmd->add_option("--seed", params.seed, "training seed");
  }

  json meta() const {
    return {{"rounds", params.rounds},
            {"max_depth", params.max_depth},
            {"eta", params.eta},
            {"lambda", params.lambda},
            {"gamma", params.gamma},
            {"min_child_weight", params.min_child_weight},
            {"seed", params.seed}};
  }
};

// Resource file paths for feature assembly; loads only what the mask needs.
struct ResourceOpts {
  std::string counts_path;
  std::string graph_path;
  std::string embeddings_path;
  std::string pattern_vocab_path;
  std::string corpus_path;
  bool tagged = false;
  std::string pattern_block = "diff";
  std::size_t cap = 10000;

  dattr::CoocTable counts;
  dattr::DistributionalGraph graph;
  dattr::EmbeddingTable embeddings;
  dattr::PatternVocab pattern_vocab;
  dattr::SentenceIndex index;
  dattr::FeatureResources res;

  void attach(CLI::App* cmd) {
    cmd->add_option("--counts", counts_path, "co-occurrence TSV (cooc group)");
    cmd->add_option("--graph", graph_path, "distributional graph JSONL (jobim group)");
    cmd->add_option("--embeddings", embeddings_path,
                    "word vector file (offset/concat groups)");
    cmd->add_option("--pattern-vocab", pattern_vocab_path,
                    "pattern vocabulary TSV (patterns group)");
    cmd->add_option("--corpus", corpus_path, "corpus for the sentence index (patterns group)");
    cmd->add_flag("--tagged", tagged, "corpus fields are token/POS");
    cmd->add_option("--pattern-block", pattern_block, "diff, w1 or stacked");
    cmd->add_option("--cap", cap, "max shared sentences scanned per pair");
  }

  void load(const dattr::GroupMask& mask) {
    using dattr::FeatureGroup;
    res.pattern_block = parse_block_mode(pattern_block);
    res.pattern_options.cap = cap;
    if (mask.contains(FeatureGroup::Cooc)) {
      if (counts_path.empty()) throw ConfigError("group 'cooc' needs --counts");
      auto in = open_in(counts_path);
      counts = dattr::CoocTable::read_tsv(in);
      res.cooc = &counts;
    }
    if (mask.contains(FeatureGroup::Jobim)) {
      if (graph_path.empty()) throw ConfigError("group 'jobim' needs --graph");
      auto in = open_in(graph_path);
      graph = dattr::DistributionalGraph::read_jsonl(in);
      res.graph = &graph;
    }
    if (mask.contains(FeatureGroup::Offset) || mask.contains(FeatureGroup::Concat)) {
      if (embeddings_path.empty())
        throw ConfigError("groups 'offset'/'concat' need --embeddings");
      embeddings = dattr::EmbeddingTable::load(embeddings_path);
      res.embeddings = &embeddings;
    }
    if (mask.contains(FeatureGroup::Patterns)) {
      if (pattern_vocab_path.empty()) throw ConfigError("group 'patterns' needs --pattern-vocab");
      if (corpus_path.empty()) throw ConfigError("group 'patterns' needs --corpus");
      auto in = open_in(pattern_vocab_path);
      pattern_vocab = dattr::PatternVocab::read_tsv(in);
      res.pattern_options.max_gap = pattern_vocab.max_gap();
      index = dattr::SentenceIndex::build(dattr::read_corpus(corpus_path, tagged));
      res.pattern_vocab = &pattern_vocab;
      res.sentences = &index;
    }
  }

  json meta(const dattr::GroupMask& mask) const {
    using dattr::FeatureGroup;
    json j;
    j["pattern_block"] = pattern_block;
    j["cap"] = cap;
    j["oov_policy"] = "zero-vector";
    j["log_base"] = 2;
    if (mask.contains(FeatureGroup::Cooc)) j["counts"] = counts_path;
    if (mask.contains(FeatureGroup::Jobim)) j["graph"] = graph_path;
    if (mask.contains(FeatureGroup::Offset) || mask.contains(FeatureGroup::Concat))
      j["embeddings"] = embeddings_path;
    if (mask.contains(FeatureGroup::Patterns)) {
      j["pattern_vocab"] = pattern_vocab_path;
      j["corpus"] = json{{"path", corpus_path}, {"sha256", dattr::sha256_file(corpus_path)}};
    }
    return j;
  }
};

// ---- subcommands ----

int run_build_counts(const CorpusOpts& corpus, const std::string& out_path,
                     std::string vocab_out) {
  auto sentences = dattr::read_corpus(corpus.path, corpus.tagged);
  dattr::Vocab vocab = dattr::Vocab::build(sentences, corpus.min_count);
  dattr::CoocTable table = dattr::CoocTable::count(sentences, vocab, corpus.window);

  auto out = open_out(out_path);
  table.write_tsv(out);
  if (vocab_out.empty()) vocab_out = out_path + ".vocab.tsv";
  auto vout = open_out(vocab_out);
  vocab.write_tsv(vout);

  json meta{{"command", "build-counts"},
            {"corpus", corpus.meta()},
            {"log_base", 2},
            {"outputs", {{"counts", out_path}, {"vocab", vocab_out}}}};
  dattr::write_run_metadata(out_path, meta);
  std::cout << "counts: " << table.total_mass() << " pair mass over "
            << vocab.size() << " vocabulary words\n";
  return 0;
}

int run_build_graph(const CorpusOpts& corpus, const std::string& out_path,
                    std::size_t p) {
  auto sentences = dattr::read_corpus(corpus.path, corpus.tagged);
  dattr::Vocab vocab = dattr::Vocab::build(sentences, corpus.min_count);
  dattr::CoocTable table = dattr::CoocTable::count(sentences, vocab, corpus.window);
  dattr::DistributionalGraph graph = dattr::DistributionalGraph::build(table, p);

  auto out = open_out(out_path);
  graph.write_jsonl(out);

  json meta{{"command", "build-graph"},
            {"corpus", corpus.meta()},
            {"p", p},
            {"log_base", 2},
            {"salience", "plmi"},
            {"outputs", {{"graph", out_path}}}};
  dattr::write_run_metadata(out_path, meta);
  std::cout << "graph: " << graph.target_count() << " targets, p=" << p << "\n";
  return 0;
}

int run_build_pattern_vocab(const CorpusOpts& corpus, const std::string& triples_path,
                            const std::string& out_path, std::uint64_t threshold,
                            std::size_t max_gap, std::size_t cap) {
  auto sentences = dattr::read_corpus(corpus.path, corpus.tagged);
  dattr::SentenceIndex index = dattr::SentenceIndex::build(sentences);
  dattr::Dataset train = dattr::load_triples(triples_path);

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const dattr::Triple& t : train.triples) {
    pairs.emplace_back(t.pivot, t.attribute);
    pairs.emplace_back(t.comparison, t.attribute);
  }
  dattr::PatternExtractOptions opt;
  opt.cap = cap;
  opt.max_gap = max_gap;
  dattr::PatternVocab vocab = dattr::PatternVocab::build(index, pairs, threshold, opt);

  auto out = open_out(out_path);
  vocab.write_tsv(out);

  json meta{{"command", "build-pattern-vocab"},
            {"corpus", corpus.meta()},
            {"triples", triples_path},
            {"threshold", threshold},
            {"max_gap", max_gap},
            {"cap", cap},
            {"outputs", {{"pattern_vocab", out_path}}}};
  dattr::write_run_metadata(out_path, meta);
  std::cout << "pattern vocab: " << vocab.size() << " patterns over threshold "
            << threshold << "\n";
  return 0;
}

int run_extract_features(const std::string& triples_path, const std::string& groups,
                         ResourceOpts& resources, const std::string& out_path) {
  dattr::GroupMask mask = dattr::GroupMask::parse(groups);
  if (mask.empty()) throw ConfigError("no feature groups enabled");
  resources.load(mask);
  dattr::Dataset dataset = dattr::load_triples(triples_path);
  dattr::FeatureSet fs = dattr::assemble_dataset(dataset, resources.res, mask);

  auto out = open_out(out_path);
  dattr::write_features(out, fs);

  json meta{{"command", "extract-features"},
            {"triples", triples_path},
            {"groups", mask.to_string()},
            {"resources", resources.meta(mask)},
            {"width", fs.x.cols},
            {"outputs", {{"features", out_path}}}};
  dattr::write_run_metadata(out_path, meta);
  std::cout << "features: " << fs.x.rows << " rows x " << fs.x.cols << " columns\n";
  return 0;
}

int run_train(const std::string& features_path, const GbtOpts& gbt,
              const std::string& out_path) {
  auto in = open_in(features_path);
  dattr::FeatureSet fs = dattr::read_features(in);
  if (!fs.labeled) throw ConfigError("training needs labeled features");

  dattr::GbtModel model = dattr::train_gbt(fs.x, fs.labels, gbt.params);
  auto out = open_out(out_path);
  out << model.to_json() << '\n';

  json meta{{"command", "train"},
            {"features", features_path},
            {"params", gbt.meta()},
            {"outputs", {{"model", out_path}}}};
  dattr::write_run_metadata(out_path, meta);
  std::cout << "model: " << model.trees.size() << " trees over " << fs.x.cols
            << " features\n";
  return 0;
}

int run_predict(const std::string& model_path, const std::string& features_path,
                const std::string& out_path) {
  auto model_in = open_in(model_path);
  std::string text((std::istreambuf_iterator<char>(model_in)),
                   std::istreambuf_iterator<char>());
  dattr::GbtModel model = dattr::GbtModel::from_json(text);
  auto in = open_in(features_path);
  dattr::FeatureSet fs = dattr::read_features(in);

  auto out = open_out(out_path);
  out << "index,prob,label\n";
  for (std::size_t i = 0; i < fs.x.rows; ++i) {
    const double prob = model.predict_prob(fs.x.row(i));
    out << i << ',' << format_double(prob) << ',' << (prob >= 0.5 ? 1 : 0) << '\n';
  }

  json meta{{"command", "predict"},
            {"model", model_path},
            {"features", features_path},
            {"outputs", {{"predictions", out_path}}}};
  dattr::write_run_metadata(out_path, meta);
  std::cout << "predictions: " << fs.x.rows << " rows\n";
  return 0;
}

std::vector<int> read_prediction_labels(const std::string& path) {
  auto in = open_in(path);
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("index,", 0) == 0) continue;
    if (line.empty()) continue;
    auto comma = line.rfind(',');
    if (comma == std::string::npos)
      throw dattr::ParseError("bad prediction row", lineno);
    int label = 0;
    auto [p, ec] = std::from_chars(line.data() + comma + 1, line.data() + line.size(), label);
    if (ec != std::errc() || p != line.data() + line.size())
      throw dattr::ParseError("bad prediction label", lineno);
    labels.push_back(label);
  }
  return labels;
}

int run_evaluate(const std::string& pred_path, const std::string& gold_path,
                 const std::string& out_path) {
  std::vector<int> pred = read_prediction_labels(pred_path);
  dattr::Dataset gold = dattr::load_triples(gold_path);
  if (!gold.labeled()) throw ConfigError("gold file must be labeled");
  std::vector<int> gold_labels;
  for (const dattr::Triple& t : gold.triples) gold_labels.push_back(*t.label);

  dattr::Metrics m = dattr::evaluate(pred, gold_labels);
  std::cout << m.to_text();
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << m.to_json() << '\n';
    json meta{{"command", "evaluate"},
              {"pred", pred_path},
              {"gold", gold_path},
              {"outputs", {{"metrics", out_path}}}};
    dattr::write_run_metadata(out_path, meta);
  }
  return 0;
}

int run_cv(const std::string& features_path, const GbtOpts& gbt, std::size_t folds,
           std::uint64_t seed, const std::string& out_path) {
  auto in = open_in(features_path);
  dattr::FeatureSet fs = dattr::read_features(in);
  if (!fs.labeled) throw ConfigError("cross-validation needs labeled features");

  dattr::CvResult cv = dattr::cross_validate(fs.x, fs.labels, gbt.params, folds, seed);
  std::cout << cv.to_csv();
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << cv.to_csv();
    json meta{{"command", "cv"},
              {"features", features_path},
              {"folds", folds},
              {"seed", seed},
              {"params", gbt.meta()},
              {"outputs", {{"cv", out_path}}}};
    dattr::write_run_metadata(out_path, meta);
  }
  return 0;
}

int run_ablate(const std::string& train_path, const std::string& test_path,
               const std::string& combos_spec, ResourceOpts& resources,
               const GbtOpts& gbt, const std::string& out_prefix,
               const std::string& embedding_label) {
  std::vector<dattr::GroupMask> combos = combos_spec.empty()
                                             ? dattr::default_ablation_combos()
                                             : dattr::parse_combos(combos_spec);
  dattr::GroupMask all;
  for (const auto& m : combos)
    for (dattr::FeatureGroup g : m.groups()) all.enable(g);
  resources.load(all);

  dattr::EmbeddingLabel label = dattr::EmbeddingLabel::W2V;
  if (embedding_label == "glove") label = dattr::EmbeddingLabel::Glove;
  else if (embedding_label != "w2v")
    throw ConfigError("--embedding-label must be w2v or glove");

  dattr::Dataset train = dattr::load_triples(train_path);
  dattr::Dataset test = dattr::load_triples(test_path);
  dattr::AblationReport report =
      dattr::ablation_table(train, test, combos, resources.res, gbt.params, label);

  auto csv = open_out(out_prefix + ".csv");
  csv << report.to_csv();
  auto txt = open_out(out_prefix + ".txt");
  txt << report.to_text();
  std::cout << report.to_text();

  json meta{{"command", "ablate"},
            {"train", train_path},
            {"test", test_path},
            {"embedding_label", embedding_label},
            {"params", gbt.meta()},
            {"resources", resources.meta(all)},
            {"outputs", {{"csv", out_prefix + ".csv"}, {"text", out_prefix + ".txt"}}}};
  dattr::write_run_metadata(out_prefix + ".csv", meta);
  return 0;
}

int run_new_validation(const std::string& train_path, const std::string& val_path,
                       std::size_t k, std::uint64_t seed, const std::string& out_path) {
  dattr::Dataset train = dattr::load_triples(train_path);
  dattr::Dataset val = dattr::load_triples(val_path);
  dattr::Dataset nv = dattr::build_new_validation(train, val, k, seed);

  auto out = open_out(out_path);
  dattr::write_triples(out, nv);

  json meta{{"command", "new-validation"},
            {"train", train_path},
            {"val", val_path},
            {"k", k},
            {"seed", seed},
            {"outputs", {{"triples", out_path}}}};
  dattr::write_run_metadata(out_path, meta);
  std::cout << "new validation: " << nv.size() << " triples\n";
  return 0;
}

int run_dataset_stats(const std::string& triples_path, const std::string& vocab_path,
                      const std::string& out_path) {
  dattr::Dataset dataset = dattr::load_triples(triples_path);
  auto in = open_in(vocab_path);
  dattr::Vocab vocab = dattr::Vocab::read_tsv(in);
  dattr::PositionFrequencies s = dattr::dataset_stats(dataset, vocab);

  std::ostringstream csv;
  csv << "dataset,rows,pivot_mean,comparison_mean,attribute_mean\n";
  csv << dataset.name << ',' << dataset.size() << ',' << format_double(s.pivot_mean)
      << ',' << format_double(s.comparison_mean) << ','
      << format_double(s.attribute_mean) << '\n';
  std::cout << csv.str();
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << csv.str();
    json meta{{"command", "dataset-stats"},
              {"triples", triples_path},
              {"vocab", vocab_path},
              {"outputs", {{"stats", out_path}}}};
    dattr::write_run_metadata(out_path, meta);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discriminative-attribute classification pipeline"};
  app.require_subcommand(1);

  // build-counts
  CorpusOpts counts_corpus;
  std::string counts_out, counts_vocab_out;
  auto* build_counts = app.add_subcommand("build-counts", "corpus -> co-occurrence TSV");
  counts_corpus.attach(build_counts);
  build_counts->add_option("--out", counts_out, "counts TSV path")->required();
  build_counts->add_option("--vocab-out", counts_vocab_out, "vocabulary TSV path");

  // build-graph
  CorpusOpts graph_corpus;
  std::string graph_out;
  std::size_t graph_p = 1000;
  auto* build_graph = app.add_subcommand("build-graph", "corpus -> distributional graph");
  graph_corpus.attach(build_graph);
  build_graph->add_option("--out", graph_out, "graph JSONL path")->required();
  build_graph->add_option("-p,--top-contexts", graph_p, "salient contexts per target");

  // build-pattern-vocab
  CorpusOpts pattern_corpus;
  std::string pv_triples, pv_out;
  std::uint64_t pv_threshold = 100;
  std::size_t pv_max_gap = 5, pv_cap = 10000;
  auto* build_pv = app.add_subcommand("build-pattern-vocab",
                                      "threshold connective patterns over training pairs");
  pattern_corpus.attach(build_pv, false);
  build_pv->add_option("--triples", pv_triples, "training triples CSV")->required();
  build_pv->add_option("--out", pv_out, "pattern vocab TSV path")->required();
  build_pv->add_option("--threshold", pv_threshold, "keep frequency strictly above this");
  build_pv->add_option("--max-gap", pv_max_gap, "longest between-sequence kept");
  build_pv->add_option("--cap", pv_cap, "max shared sentences scanned per pair");

  // extract-features
  std::string ef_triples, ef_groups, ef_out;
  ResourceOpts ef_resources;
  auto* extract = app.add_subcommand("extract-features", "triples -> feature file");
  extract->add_option("--triples", ef_triples, "triples CSV")->required();
  extract->add_option("--groups", ef_groups,
                      "comma list of cooc,offset,concat,jobim,patterns")->required();
  extract->add_option("--out", ef_out, "feature file path")->required();
  ef_resources.attach(extract);

  // train
  std::string train_features, train_out;
  GbtOpts train_gbt_opts;
  auto* train = app.add_subcommand("train", "features -> boosted-tree model");
  train->add_option("--features", train_features, "labeled feature file")->required();
  train->add_option("--out", train_out, "model JSON path")->required();
  train_gbt_opts.attach(train);

  // predict
  std::string pr_model, pr_features, pr_out;
  auto* predict = app.add_subcommand("predict", "model + features -> predictions CSV");
  predict->add_option("--model", pr_model, "model JSON")->required();
  predict->add_option("--features", pr_features, "feature file")->required();
  predict->add_option("--out", pr_out, "predictions CSV path")->required();

  // evaluate
  std::string ev_pred, ev_gold, ev_out;
  auto* eval = app.add_subcommand("evaluate", "predictions vs gold labels");
  eval->add_option("--pred", ev_pred, "predictions CSV")->required();
  eval->add_option("--gold", ev_gold, "labeled triples CSV")->required();
  eval->add_option("--out", ev_out, "metrics JSON path");

  // cv
  std::string cv_features, cv_out;
  GbtOpts cv_gbt_opts;
  std::size_t cv_folds = 5;
  std::uint64_t cv_seed = 0;
  auto* cv = app.add_subcommand("cv", "stratified cross-validation");
  cv->add_option("--features", cv_features, "labeled feature file")->required();
  cv->add_option("--folds", cv_folds, "fold count");
  cv->add_option("--seed", cv_seed, "fold assignment seed");
  cv->add_option("--out", cv_out, "per-fold CSV path");
  cv_gbt_opts.attach(cv, /*with_seed=*/false);

  // ablate
  std::string ab_train, ab_test, ab_combos, ab_prefix, ab_embedding_label = "w2v";
  ResourceOpts ab_resources;
  GbtOpts ab_gbt_opts;
  auto* ablate = app.add_subcommand("ablate", "feature-group ablation report");
  ablate->add_option("--train", ab_train, "labeled training triples CSV")->required();
  ablate->add_option("--test", ab_test, "labeled test triples CSV")->required();
  ablate->add_option("--combos", ab_combos,
                     "bar-separated masks, e.g. 'cooc|cooc,jobim' (default: the report ladder)");
  ablate->add_option("--out-prefix", ab_prefix, "writes <prefix>.csv and <prefix>.txt")
      ->required();
  ablate->add_option("--embedding-label", ab_embedding_label, "w2v or glove");
  ab_resources.attach(ablate);
  ab_gbt_opts.attach(ablate);

  // new-validation
  std::string nv_train, nv_val, nv_out;
  std::size_t nv_k = 2278;
  std::uint64_t nv_seed = 13;
  auto* newval = app.add_subcommand("new-validation",
                                    "validation triples plus k sampled training triples");
  newval->add_option("--train", nv_train, "training triples CSV")->required();
  newval->add_option("--val", nv_val, "validation triples CSV")->required();
  newval->add_option("--k", nv_k, "triples sampled from training");
  newval->add_option("--seed", nv_seed, "sampling seed");
  newval->add_option("--out", nv_out, "output triples CSV")->required();

  // dataset-stats
  std::string ds_triples, ds_vocab, ds_out;
  auto* dstats = app.add_subcommand("dataset-stats", "mean corpus frequency per position");
  dstats->add_option("--triples", ds_triples, "triples CSV")->required();
  dstats->add_option("--vocab", ds_vocab, "vocabulary TSV from build-counts")->required();
  dstats->add_option("--out", ds_out, "stats CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build_counts->parsed())
      return run_build_counts(counts_corpus, counts_out, counts_vocab_out);
    if (build_graph->parsed()) return run_build_graph(graph_corpus, graph_out, graph_p);
    if (build_pv->parsed())
      return run_build_pattern_vocab(pattern_corpus, pv_triples, pv_out, pv_threshold,
                                     pv_max_gap, pv_cap);
    if (extract->parsed())
      return run_extract_features(ef_triples, ef_groups, ef_resources, ef_out);
    if (train->parsed()) return run_train(train_features, train_gbt_opts, train_out);
    if (predict->parsed()) return run_predict(pr_model, pr_features, pr_out);
    if (eval->parsed()) return run_evaluate(ev_pred, ev_gold, ev_out);
    if (cv->parsed()) return run_cv(cv_features, cv_gbt_opts, cv_folds, cv_seed, cv_out);
    if (ablate->parsed())
      return run_ablate(ab_train, ab_test, ab_combos, ab_resources, ab_gbt_opts,
                        ab_prefix, ab_embedding_label);
    if (newval->parsed())
      return run_new_validation(nv_train, nv_val, nv_k, nv_seed, nv_out);
    if (dstats->parsed()) return run_dataset_stats(ds_triples, ds_vocab, ds_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
