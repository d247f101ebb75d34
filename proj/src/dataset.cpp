#include "dattr/dataset.hpp"

#include <fstream>
#include <sstream>

#include "dattr/error.hpp"
#include "dattr/rng.hpp"

namespace dattr {

bool Dataset::labeled() const {
  return !triples.empty() && triples.front().label.has_value();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

Dataset parse_triples(std::istream& in, const std::string& name) {
  Dataset d;
  d.name = name;
  std::string line;
  std::size_t lineno = 0;
  int arity = 0;  // fixed by the first row
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 3 && fields.size() != 4)
      throw ParseError("triple rows have 3 or 4 comma-separated fields", lineno);
    if (arity == 0) arity = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != arity)
      throw ParseError("row arity differs from the rest of the file", lineno);
    for (int i = 0; i < 3; ++i)
      if (fields[static_cast<std::size_t>(i)].empty())
        throw ParseError("empty token in triple", lineno);

    Triple t{fields[0], fields[1], fields[2], std::nullopt};
    if (arity == 4) {
      if (fields[3] == "0") t.label = 0;
      else if (fields[3] == "1") t.label = 1;
      else throw ParseError("label must be 0 or 1, got '" + fields[3] + "'", lineno);
    }
    d.triples.push_back(std::move(t));
  }
  return d;
}

Dataset load_triples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open triple file: " + path);
  auto slash = path.find_last_of('/');
  return parse_triples(in, slash == std::string::npos ? path : path.substr(slash + 1));
}

void write_triples(std::ostream& out, const Dataset& dataset) {
  for (const Triple& t : dataset.triples) {
    out << t.pivot << ',' << t.comparison << ',' << t.attribute;
    if (t.label) out << ',' << *t.label;
    out << '\n';
  }
}

Dataset build_new_validation(const Dataset& train, const Dataset& val, std::size_t k,
                             std::uint64_t seed) {
  if (k > train.size())
    throw Error("cannot sample " + std::to_string(k) + " triples from " +
                std::to_string(train.size()));
  Dataset out;
  out.name = "new-validation";
  out.triples = val.triples;
  Rng rng(seed);
  for (std::size_t idx : rng.sample_without_replacement(train.size(), k))
    out.triples.push_back(train.triples[idx]);
  return out;
}

PositionFrequencies dataset_stats(const Dataset& dataset, const Vocab& vocab) {
  PositionFrequencies s;
  if (dataset.triples.empty()) return s;
  for (const Triple& t : dataset.triples) {
    s.pivot_mean += static_cast<double>(vocab.frequency(t.pivot));
    s.comparison_mean += static_cast<double>(vocab.frequency(t.comparison));
    s.attribute_mean += static_cast<double>(vocab.frequency(t.attribute));
  }
  const auto n = static_cast<double>(dataset.size());
  s.pivot_mean /= n;
  s.comparison_mean /= n;
  s.attribute_mean /= n;
  return s;
}

}  // namespace dattr
