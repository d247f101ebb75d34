#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dattr/dataset.hpp"
#include "dattr/features.hpp"
#include "dattr/gbt.hpp"
#include "dattr/metrics.hpp"

#include <nlohmann/json_fwd.hpp>

namespace dattr {

// Stratified k-fold cross-validation. Fold assignment shuffles each class
// under `seed` and deals round-robin, so per-fold label ratios stay within
// one of exact proportionality. A class missing from some training fold is
// a warning on stderr, not an error.
struct CvResult {
  std::vector<Metrics> folds;
  double mean_macro_f1 = 0.0;

  std::string to_csv() const;
};

CvResult cross_validate(const Matrix& x, std::span<const int> y,
                        const GbtParams& params, std::size_t folds, std::uint64_t seed);

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> y,
                                                       std::size_t folds,
                                                       std::uint64_t seed);

// Which pretrained-vector family the embedding-backed groups are labeled as
// in ablation rows (they get different row numbers in the report).
enum class EmbeddingLabel : std::uint8_t { W2V, Glove };

// Row name in the report's bracket notation, e.g. "1", "1 & 3", "1, 3 & 6".
std::string combo_name(const GroupMask& mask, EmbeddingLabel label);

struct AblationRow {
  std::string name;
  GroupMask mask;
  std::size_t width = 0;
  Metrics metrics;
};

struct AblationReport {
  std::string train_name;
  std::string test_name;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  std::vector<AblationRow> rows;

  std::string to_csv() const;
  std::string to_text() const;
};

// One row per mask: assemble features on both datasets, train, evaluate on
// the test set. Deterministic end to end.
AblationReport ablation_table(const Dataset& train, const Dataset& test,
                              std::span<const GroupMask> combos,
                              const FeatureResources& res, const GbtParams& params,
                              EmbeddingLabel label = EmbeddingLabel::W2V);

// The report rows the paper's ablation uses: each group alone plus the
// incremental combinations around the co-occurrence block.
std::vector<GroupMask> default_ablation_combos();

// "m1|m2|..." where each m is a comma-separated group list.
std::vector<GroupMask> parse_combos(std::string_view spec);

std::string sha256_file(const std::string& path);

// Pretty-printed JSON sidecar next to an output file. Deliberately carries
// no timestamps so reruns are byte-identical.
void write_run_metadata(const std::string& out_path, const nlohmann::json& meta);

}  // namespace dattr
