#include "dattr/metrics.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "dattr/error.hpp"

namespace dattr {

namespace {

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassMetrics m;
  m.support = tp + fn;
  m.precision = safe_div(static_cast<double>(tp), static_cast<double>(tp + fp));
  m.recall = safe_div(static_cast<double>(tp), static_cast<double>(tp + fn));
  m.f1 = safe_div(2.0 * m.precision * m.recall, m.precision + m.recall);
  return m;
}

}  // namespace

Metrics evaluate(std::span<const int> pred, std::span<const int> gold) {
  if (pred.size() != gold.size())
    throw Error("evaluate: " + std::to_string(pred.size()) + " predictions vs " +
                std::to_string(gold.size()) + " gold labels");
  if (pred.empty()) throw Error("evaluate: empty input");

  Metrics m;
  m.n = pred.size();
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if ((pred[i] != 0 && pred[i] != 1) || (gold[i] != 0 && gold[i] != 1))
      throw Error("evaluate: labels must be 0 or 1");
    if (gold[i] == 1) ++(pred[i] == 1 ? m.tp : m.fn);
    else ++(pred[i] == 1 ? m.fp : m.tn);
  }
  m.positive = class_metrics(m.tp, m.fp, m.fn);
  m.negative = class_metrics(m.tn, m.fn, m.fp);
  m.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(m.n);
  m.macro_f1 = (m.positive.f1 + m.negative.f1) / 2.0;
  return m;
}

std::string Metrics::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["accuracy"] = accuracy;
  j["macro_f1"] = macro_f1;
  j["confusion"] = {{"tp", tp}, {"fp", fp}, {"fn", fn}, {"tn", tn}};
  auto cls = [](const ClassMetrics& c) {
    return nlohmann::json{{"precision", c.precision},
                          {"recall", c.recall},
                          {"f1", c.f1},
                          {"support", c.support}};
  };
  j["positive"] = cls(positive);
  j["negative"] = cls(negative);
  return j.dump(2);
}

std::string Metrics::to_text() const {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << "n=" << n << " accuracy=" << accuracy << " macro_f1=" << macro_f1 << "\n";
  auto row = [&](const char* name, const ClassMetrics& c) {
    os << name << " precision=" << c.precision << " recall=" << c.recall
       << " f1=" << c.f1 << " support=" << c.support << "\n";
  };
  row("class 1:", positive);
  row("class 0:", negative);
  os << "confusion tp=" << tp << " fp=" << fp << " fn=" << fn << " tn=" << tn << "\n";
  return os.str();
}

}  // namespace dattr
