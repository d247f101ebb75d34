#include "dattr/features.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "dattr/error.hpp"

namespace dattr {

const char* group_name(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::Cooc: return "cooc";
    case FeatureGroup::Offset: return "offset";
    case FeatureGroup::Concat: return "concat";
    case FeatureGroup::Jobim: return "jobim";
    case FeatureGroup::Patterns: return "patterns";
  }
  return "?";
}

std::vector<FeatureGroup> GroupMask::groups() const {
  std::vector<FeatureGroup> out;
  for (FeatureGroup g : kAllGroups)
    if (contains(g)) out.push_back(g);
  return out;
}

GroupMask GroupMask::parse(std::string_view csv) {
  GroupMask mask;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto comma = csv.find(',', start);
    std::string_view name = csv.substr(
        start, comma == std::string_view::npos ? csv.size() - start : comma - start);
    if (!name.empty()) {
      bool known = false;
      for (FeatureGroup g : kAllGroups) {
        if (name == group_name(g)) {
          mask.enable(g);
          known = true;
          break;
        }
      }
      if (!known) throw ConfigError("unknown feature group '" + std::string(name) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return mask;
}

std::string GroupMask::to_string() const {
  std::string out;
  for (FeatureGroup g : groups()) {
    if (!out.empty()) out.push_back(',');
    out += group_name(g);
  }
  return out;
}

namespace {

void require(bool present, FeatureGroup g, const char* what) {
  if (!present)
    throw ConfigError(std::string("group '") + group_name(g) + "' needs " + what);
}

}  // namespace

std::size_t group_width(FeatureGroup g, const FeatureResources& res) {
  switch (g) {
    case FeatureGroup::Cooc:
      return kCoocBlockWidth;
    case FeatureGroup::Offset:
      return kOffsetBlockWidth;
    case FeatureGroup::Concat:
      require(res.embeddings != nullptr, g, "an embedding table");
      return 3 * res.embeddings->dimension();
    case FeatureGroup::Jobim:
      return kJobimBlockWidth;
    case FeatureGroup::Patterns:
      require(res.pattern_vocab != nullptr, g, "a pattern vocabulary");
      return pattern_block_width(*res.pattern_vocab, res.pattern_block);
  }
  return 0;
}

FeatureVector assemble_features(const Triple& triple, const FeatureResources& res,
                                const GroupMask& mask) {
  if (mask.empty()) throw ConfigError("no feature groups enabled");
  FeatureVector fv;
  for (FeatureGroup g : mask.groups()) {
    std::vector<double> block;
    switch (g) {
      case FeatureGroup::Cooc: {
        require(res.cooc != nullptr, g, "a co-occurrence table");
        auto b = cooc_feature_block(*res.cooc, triple.pivot, triple.comparison,
                                    triple.attribute);
        block.assign(b.begin(), b.end());
        break;
      }
      case FeatureGroup::Offset: {
        require(res.embeddings != nullptr, g, "an embedding table");
        auto b = offset_feature_block(*res.embeddings, triple.pivot, triple.comparison,
                                      triple.attribute);
        block.assign(b.begin(), b.end());
        break;
      }
      case FeatureGroup::Concat: {
        require(res.embeddings != nullptr, g, "an embedding table");
        block = concat_block(*res.embeddings, triple.pivot, triple.comparison,
                             triple.attribute);
        break;
      }
      case FeatureGroup::Jobim: {
        require(res.graph != nullptr, g, "a distributional graph");
        auto b = jobim_feature_block(*res.graph, triple.pivot, triple.comparison,
                                     triple.attribute);
        block.assign(b.begin(), b.end());
        break;
      }
      case FeatureGroup::Patterns: {
        require(res.pattern_vocab != nullptr, g, "a pattern vocabulary");
        require(res.sentences != nullptr, g, "a sentence index");
        block = pattern_feature_block(*res.pattern_vocab, *res.sentences, triple.pivot,
                                      triple.comparison, triple.attribute,
                                      res.pattern_block, res.pattern_options);
        break;
      }
    }
    fv.groups.emplace_back(group_name(g), block.size());
    fv.values.insert(fv.values.end(), block.begin(), block.end());
  }
  return fv;
}

FeatureSet assemble_dataset(const Dataset& dataset, const FeatureResources& res,
                            const GroupMask& mask) {
  FeatureSet fs;
  fs.labeled = dataset.labeled();
  std::size_t width = 0;
  for (FeatureGroup g : mask.groups()) {
    std::size_t w = group_width(g, res);
    fs.groups.emplace_back(group_name(g), w);
    width += w;
  }
  fs.x = Matrix(dataset.size(), width);
  fs.labels.assign(dataset.size(), -1);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    FeatureVector fv = assemble_features(dataset.triples[i], res, mask);
    if (fv.width() != width) throw Error("assembled width drifted between rows");
    auto row = fs.x.row(i);
    std::copy(fv.values.begin(), fv.values.end(), row.begin());
    if (dataset.triples[i].label) fs.labels[i] = *dataset.triples[i].label;
  }
  return fs;
}

namespace {

std::string format_value(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace

void write_features(std::ostream& out, const FeatureSet& fs) {
  nlohmann::json header;
  header["groups"] = nlohmann::json::array();
  for (const auto& [name, w] : fs.groups) header["groups"].push_back({name, w});
  header["width"] = fs.x.cols;
  out << '#' << header.dump() << '\n';

  for (std::size_t i = 0; i < fs.x.rows; ++i) {
    out << (fs.labeled ? fs.labels[i] : -1);
    auto row = fs.x.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0.0) continue;
      out << ' ' << j << ':' << format_value(row[j]);
    }
    out << '\n';
  }
}

FeatureSet read_features(std::istream& in) {
  FeatureSet fs;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  std::vector<double> data;
  std::vector<int> labels;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (lineno != 1) throw ParseError("header must be the first line", lineno);
      nlohmann::json header;
      try {
        header = nlohmann::json::parse(line.substr(1));
        width = header.at("width").get<std::size_t>();
        for (const auto& g : header.at("groups"))
          fs.groups.emplace_back(g.at(0).get<std::string>(), g.at(1).get<std::size_t>());
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad feature header: ") + e.what(), lineno);
      }
      continue;
    }
    if (width == 0 && fs.groups.empty())
      throw ParseError("missing feature header", lineno);

    std::vector<double> row(width, 0.0);
    const char* p = line.data();
    const char* end = line.data() + line.size();
    int label = 0;
    auto [p1, ec1] = std::from_chars(p, end, label);
    if (ec1 != std::errc()) throw ParseError("bad label", lineno);
    p = p1;
    while (p < end) {
      if (*p != ' ') throw ParseError("expected space between entries", lineno);
      ++p;
      std::size_t idx = 0;
      auto [p2, ec2] = std::from_chars(p, end, idx);
      if (ec2 != std::errc() || p2 >= end || *p2 != ':')
        throw ParseError("expected idx:value entry", lineno);
      p = p2 + 1;
      double v = 0.0;
      auto [p3, ec3] = std::from_chars(p, end, v);
      if (ec3 != std::errc()) throw ParseError("bad feature value", lineno);
      p = p3;
      if (idx >= width) throw ParseError("feature index out of range", lineno);
      row[idx] = v;
    }
    labels.push_back(label);
    data.insert(data.end(), row.begin(), row.end());
  }

  fs.x.rows = labels.size();
  fs.x.cols = width;
  fs.x.data = std::move(data);
  fs.labels = std::move(labels);
  fs.labeled = !fs.labels.empty() && fs.labels.front() >= 0;
  for (int l : fs.labels)
    if ((l >= 0) != fs.labeled) throw ParseError("mixed labeled and unlabeled rows");
  return fs;
}

}  // namespace dattr
