#include "dattr/harness.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "dattr/error.hpp"
#include "dattr/rng.hpp"

namespace dattr {

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> y,
                                                       std::size_t folds,
                                                       std::uint64_t seed) {
  if (folds < 2) throw ConfigError("folds must be >= 2");
  if (y.size() < folds) throw ConfigError("need at least one row per fold");

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] == 1 ? pos : neg).push_back(i);

  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);

  std::vector<std::vector<std::size_t>> out(folds);
  for (std::size_t i = 0; i < pos.size(); ++i) out[i % folds].push_back(pos[i]);
  for (std::size_t i = 0; i < neg.size(); ++i) out[i % folds].push_back(neg[i]);
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

CvResult cross_validate(const Matrix& x, std::span<const int> y,
                        const GbtParams& params, std::size_t folds, std::uint64_t seed) {
  const auto assignment = stratified_folds(y, folds, seed);

  CvResult result;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<char> in_test(x.rows, 0);
    for (std::size_t i : assignment[f]) in_test[i] = 1;

    Matrix train_x;
    train_x.cols = x.cols;
    std::vector<int> train_y;
    std::vector<std::size_t> test_rows;
    for (std::size_t i = 0; i < x.rows; ++i) {
      if (in_test[i]) {
        test_rows.push_back(i);
      } else {
        auto row = x.row(i);
        train_x.data.insert(train_x.data.end(), row.begin(), row.end());
        train_y.push_back(y[i]);
      }
    }
    train_x.rows = train_y.size();

    const std::size_t train_pos =
        static_cast<std::size_t>(std::count(train_y.begin(), train_y.end(), 1));
    if (train_pos == 0 || train_pos == train_y.size())
      std::cerr << "warning: fold " << f << " trains on a single class\n";

    GbtModel model = train_gbt(train_x, train_y, params);
    std::vector<int> pred, gold;
    for (std::size_t i : test_rows) {
      pred.push_back(model.predict_label(x.row(i)));
      gold.push_back(y[i]);
    }
    result.folds.push_back(evaluate(pred, gold));
  }

  for (const Metrics& m : result.folds) result.mean_macro_f1 += m.macro_f1;
  result.mean_macro_f1 /= static_cast<double>(result.folds.size());
  return result;
}

std::string CvResult::to_csv() const {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);
  os << "fold,n,accuracy,macro_f1,f1_positive,f1_negative\n";
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const Metrics& m = folds[f];
    os << f << ',' << m.n << ',' << m.accuracy << ',' << m.macro_f1 << ','
       << m.positive.f1 << ',' << m.negative.f1 << '\n';
  }
  os << "mean,,," << mean_macro_f1 << ",,\n";
  return os.str();
}

std::string combo_name(const GroupMask& mask, EmbeddingLabel label) {
  const bool glove = label == EmbeddingLabel::Glove;
  std::vector<int> numbers;
  if (mask.contains(FeatureGroup::Cooc)) numbers.push_back(1);
  if (mask.contains(FeatureGroup::Concat)) {
    // "+ Vectors" rows include the offset features alongside the vectors.
    numbers.push_back(glove ? 5 : 3);
  } else if (mask.contains(FeatureGroup::Offset)) {
    numbers.push_back(glove ? 4 : 2);
  }
  if (mask.contains(FeatureGroup::Jobim)) numbers.push_back(6);
  if (mask.contains(FeatureGroup::Patterns)) numbers.push_back(7);
  std::sort(numbers.begin(), numbers.end());

  std::string out;
  for (std::size_t i = 0; i < numbers.size(); ++i) {
    if (i > 0) out += i + 1 == numbers.size() ? " & " : ", ";
    out += std::to_string(numbers[i]);
  }
  return out;
}

AblationReport ablation_table(const Dataset& train, const Dataset& test,
                              std::span<const GroupMask> combos,
                              const FeatureResources& res, const GbtParams& params,
                              EmbeddingLabel label) {
  if (!train.labeled() || !test.labeled())
    throw ConfigError("ablation needs labeled train and test datasets");

  AblationReport report;
  report.train_name = train.name;
  report.test_name = test.name;
  report.train_rows = train.size();
  report.test_rows = test.size();

  for (const GroupMask& mask : combos) {
    FeatureSet train_fs = assemble_dataset(train, res, mask);
    FeatureSet test_fs = assemble_dataset(test, res, mask);
    GbtModel model = train_gbt(train_fs.x, train_fs.labels, params);

    std::vector<int> pred;
    pred.reserve(test_fs.x.rows);
    for (std::size_t i = 0; i < test_fs.x.rows; ++i)
      pred.push_back(model.predict_label(test_fs.x.row(i)));

    AblationRow row;
    row.name = combo_name(mask, label);
    row.mask = mask;
    row.width = train_fs.x.cols;
    row.metrics = evaluate(pred, test_fs.labels);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string AblationReport::to_csv() const {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);
  os << "name,groups,width,macro_f1,f1_positive,accuracy\n";
  for (const AblationRow& r : rows) {
    os << '"' << r.name << "\",\"" << r.mask.to_string() << "\"," << r.width << ','
       << r.metrics.macro_f1 << ',' << r.metrics.positive.f1 << ','
       << r.metrics.accuracy << '\n';
  }
  return os.str();
}

std::string AblationReport::to_text() const {
  std::ostringstream os;
  os << "ablation: train=" << train_name << " (" << train_rows
     << " rows) test=" << test_name << " (" << test_rows << " rows)\n";
  os.setf(std::ios::fixed);
  os.precision(4);
  os << std::left << std::setw(18) << "combo" << std::setw(38) << "groups"
     << std::right << std::setw(8) << "width" << std::setw(10) << "macro-F1"
     << std::setw(10) << "F1(pos)" << '\n';
  for (const AblationRow& r : rows) {
    os << std::left << std::setw(18) << r.name << std::setw(38) << r.mask.to_string()
       << std::right << std::setw(8) << r.width << std::setw(10) << r.metrics.macro_f1
       << std::setw(10) << r.metrics.positive.f1 << '\n';
  }
  return os.str();
}

std::vector<GroupMask> default_ablation_combos() {
  const auto mask = [](std::initializer_list<FeatureGroup> gs) {
    GroupMask m;
    for (FeatureGroup g : gs) m.enable(g);
    return m;
  };
  using G = FeatureGroup;
  return {
      mask({G::Cooc}),
      mask({G::Offset}),
      mask({G::Offset, G::Concat}),
      mask({G::Jobim}),
      mask({G::Patterns}),
      mask({G::Cooc, G::Offset, G::Concat}),
      mask({G::Cooc, G::Jobim}),
      mask({G::Cooc, G::Offset, G::Concat, G::Jobim}),
      mask({G::Cooc, G::Offset, G::Concat, G::Jobim, G::Patterns}),
  };
}

std::vector<GroupMask> parse_combos(std::string_view spec) {
  std::vector<GroupMask> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto bar = spec.find('|', start);
    std::string_view part = spec.substr(
        start, bar == std::string_view::npos ? spec.size() - start : bar - start);
    if (!part.empty()) out.push_back(GroupMask::parse(part));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (out.empty()) throw ConfigError("no combos given");
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for hashing: " + path);

  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 init failed");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0)
      EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

void write_run_metadata(const std::string& out_path, const nlohmann::json& meta) {
  const std::string path = out_path + ".meta.json";
  std::ofstream out(path);
  if (!out) throw IoError("cannot write metadata: " + path);
  out << meta.dump(2) << '\n';
}

}  // namespace dattr
