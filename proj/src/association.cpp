#include "dattr/association.hpp"

#include <cmath>

namespace dattr {

std::optional<double> pmi(const CoocTable& table, std::string_view w,
                          std::string_view c) {
  const std::uint64_t n = table.count(w, c);
  if (n == 0) return std::nullopt;
  const auto joint = static_cast<double>(n);
  const auto total = static_cast<double>(table.total_mass());
  const auto mw = static_cast<double>(table.marginal(w));
  const auto mc = static_cast<double>(table.marginal(c));
  return std::log2(joint * total / (mw * mc));
}

double ppmi(const CoocTable& table, std::string_view w, std::string_view c) {
  auto v = pmi(table, w, c);
  return v && *v > 0.0 ? *v : 0.0;
}

double plmi(const CoocTable& table, std::string_view w, std::string_view c) {
  auto v = pmi(table, w, c);
  if (!v || *v <= 0.0) return 0.0;
  return static_cast<double>(table.count(w, c)) * *v;
}

std::array<double, kCoocBlockWidth> cooc_feature_block(const CoocTable& table,
                                                       std::string_view w1,
                                                       std::string_view w2,
                                                       std::string_view feat) {
  std::array<double, kCoocBlockWidth> out{};
  const auto fill = [&](std::size_t base, std::string_view w) {
    out[base + 0] = static_cast<double>(table.count(w, feat));
    out[base + 1] = static_cast<double>(table.marginal(w));
    out[base + 2] = static_cast<double>(table.marginal(feat));
    out[base + 3] = ppmi(table, w, feat);
    out[base + 4] = plmi(table, w, feat);
  };
  fill(0, w1);
  fill(5, w2);
  out[10] = out[0] - out[5];
  out[11] = out[3] - out[8];
  out[12] = out[4] - out[9];
  return out;
}

}  // namespace dattr
