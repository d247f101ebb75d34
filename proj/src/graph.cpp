#include "dattr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "dattr/error.hpp"

namespace dattr {

namespace {

std::string context_string(const ContextKey& k) {
  std::string s = k.lexical;
  s.push_back('#');
  s.push_back(k.tag);
  return s;
}

}  // namespace

DistributionalGraph DistributionalGraph::build(const CoocTable& table, std::size_t p) {
  if (p < 1) throw ConfigError("p must be >= 1");
  DistributionalGraph g;
  g.p_ = p;

  const auto total = static_cast<double>(table.total_mass());
  // target id (in table) -> salient contexts
  std::vector<std::vector<ScoredContext>> raw(table.vocabulary_size());
  table.for_each_directed([&](std::uint32_t target, std::uint32_t context,
                              Direction d, std::uint64_t n) {
    const auto joint = static_cast<double>(n);
    const auto mt = static_cast<double>(table.marginal(table.token(target)));
    const auto mc = static_cast<double>(table.context_marginal(table.token(context), d));
    const double salience = joint * std::log2(joint * total / (mt * mc));
    if (salience > 0.0)
      raw[target].push_back({{table.token(context), direction_tag(d)}, salience});
  });

  std::vector<std::uint32_t> order;
  for (std::uint32_t t = 0; t < raw.size(); ++t)
    if (!raw[t].empty()) order.push_back(t);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return table.token(a) < table.token(b);
  });

  for (std::uint32_t t : order) {
    auto& list = raw[t];
    std::sort(list.begin(), list.end(), [](const ScoredContext& a, const ScoredContext& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.key < b.key;
    });
    if (list.size() > p) list.resize(p);
    g.targets_.push_back(table.token(t));
    g.lists_.push_back(std::move(list));
  }
  g.finalize();
  return g;
}

void DistributionalGraph::finalize() {
  target_ids_.clear();
  inverted_.clear();
  for (std::uint32_t i = 0; i < targets_.size(); ++i) {
    target_ids_.emplace(targets_[i], i);
    for (const ScoredContext& sc : lists_[i])
      inverted_[context_string(sc.key)].push_back(i);
  }
}

std::span<const ScoredContext> DistributionalGraph::contexts(std::string_view target) const {
  auto it = target_ids_.find(std::string(target));
  if (it == target_ids_.end()) return {};
  return lists_[it->second];
}

std::size_t DistributionalGraph::overlap(std::string_view a, std::string_view b) const {
  auto ca = contexts(a);
  auto cb = contexts(b);
  if (ca.empty() || cb.empty()) return 0;
  if (cb.size() < ca.size()) std::swap(ca, cb);
  std::unordered_set<std::string> keys;
  keys.reserve(ca.size());
  for (const ScoredContext& x : ca) keys.insert(context_string(x.key));
  std::size_t n = 0;
  for (const ScoredContext& y : cb)
    if (keys.contains(context_string(y.key))) ++n;
  return n;
}

std::vector<std::pair<std::string, std::size_t>> DistributionalGraph::neighbors(
    std::string_view w, std::size_t k) const {
  if (k < 1) throw ConfigError("k must be >= 1");
  auto cw = contexts(w);
  std::vector<std::pair<std::string, std::size_t>> out;
  if (cw.empty()) return out;

  std::unordered_map<std::uint32_t, std::size_t> counts;
  for (const ScoredContext& sc : cw) {
    auto it = inverted_.find(context_string(sc.key));
    if (it == inverted_.end()) continue;
    for (std::uint32_t t : it->second) counts[t] += 1;
  }
  auto self = target_ids_.find(std::string(w));
  out.reserve(counts.size());
  for (const auto& [t, n] : counts) {
    if (self != target_ids_.end() && t == self->second) continue;
    out.emplace_back(targets_[t], n);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

FeatProfile DistributionalGraph::query_profile(std::string_view target,
                                               std::string_view feat) const {
  FeatProfile p;
  auto list = contexts(target);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].key.lexical != feat) continue;
    const int rank = static_cast<int>(i) + 1;
    if (!p.found) p.best_rank = rank;
    p.found = true;
    p.worst_rank = rank;
    p.total_score += list[i].score;
    p.occurrences += 1;
  }
  return p;
}

void DistributionalGraph::write_jsonl(std::ostream& out) const {
  for (std::size_t i = 0; i < targets_.size(); ++i) {
    nlohmann::json rec;
    rec["target"] = targets_[i];
    auto& ctxs = rec["contexts"] = nlohmann::json::array();
    for (const ScoredContext& sc : lists_[i])
      ctxs.push_back({sc.key.lexical, std::string(1, sc.key.tag), sc.score});
    out << rec.dump() << "\n";
  }
}

DistributionalGraph DistributionalGraph::read_jsonl(std::istream& in) {
  DistributionalGraph g;
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::vector<ScoredContext>> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad graph record: ") + e.what(), lineno);
    }
    if (!rec.contains("target") || !rec.contains("contexts"))
      throw ParseError("graph record needs target and contexts", lineno);
    std::vector<ScoredContext> list;
    for (const auto& c : rec["contexts"]) {
      if (!c.is_array() || c.size() != 3)
        throw ParseError("context entries are [lexical, tag, score]", lineno);
      std::string tag = c[1].get<std::string>();
      if (tag.size() != 1) throw ParseError("context tag must be one character", lineno);
      list.push_back({{c[0].get<std::string>(), tag[0]}, c[2].get<double>()});
    }
    g.p_ = std::max(g.p_, list.size());
    records[rec["target"].get<std::string>()] = std::move(list);
  }
  for (auto& [target, list] : records) {
    g.targets_.push_back(target);
    g.lists_.push_back(std::move(list));
  }
  g.finalize();
  return g;
}

namespace {

// A profile plus how it was obtained: 0 = the word itself, n >= 1 = rank of
// the neighbor that was substituted, -1 = nothing found.
struct ResolvedProfile {
  FeatProfile profile;
  int via = 0;
};

ResolvedProfile resolve_word_neighbor(const DistributionalGraph& g,
                                      std::string_view w, std::string_view feat) {
  FeatProfile direct = g.query_profile(w, feat);
  if (direct.found) return {direct, 0};
  auto nbs = g.neighbors(w, kNeighborScan);
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    FeatProfile p = g.query_profile(nbs[i].first, feat);
    if (p.found) return {p, static_cast<int>(i) + 1};
  }
  return {FeatProfile{}, -1};
}

ResolvedProfile resolve_feat_neighbor(const DistributionalGraph& g,
                                      std::string_view w, std::string_view feat) {
  FeatProfile direct = g.query_profile(w, feat);
  if (direct.found) return {direct, 0};
  auto nbs = g.neighbors(feat, kNeighborScan);
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    // The roles flip: look the target word up in the feat neighbor's list.
    FeatProfile p = g.query_profile(nbs[i].first, w);
    if (p.found) return {p, static_cast<int>(i) + 1};
  }
  return {FeatProfile{}, -1};
}

void emit_mode(std::span<double> out, const ResolvedProfile& r1,
               const ResolvedProfile& r2, int which_neighbor_slot) {
  const FeatProfile& p1 = r1.profile;
  const FeatProfile& p2 = r2.profile;
  const bool pred_rank = p1.found && (!p2.found || p1.best_rank < p2.best_rank);
  const bool pred_score = p1.total_score > p2.total_score;
  const ResolvedProfile& chosen = pred_score ? r1 : r2;
  const FeatProfile& cp = chosen.profile;

  out[0] = pred_rank ? 1.0 : 0.0;
  out[1] = pred_score ? 1.0 : 0.0;
  out[2] = cp.total_score;
  out[3] = cp.found ? cp.best_rank : -1.0;
  out[4] = cp.found ? cp.worst_rank : -1.0;
  out[5] = cp.occurrences;
  out[6] = which_neighbor_slot == 1 ? chosen.via : 0.0;
  out[7] = which_neighbor_slot == 2 ? chosen.via : 0.0;
}

}  // namespace

std::array<double, kJobimBlockWidth> jobim_feature_block(
    const DistributionalGraph& g, std::string_view w1, std::string_view w2,
    std::string_view feat) {
  std::array<double, kJobimBlockWidth> out{};
  std::span<double> all(out);

  ResolvedProfile d1{g.query_profile(w1, feat), 0};
  ResolvedProfile d2{g.query_profile(w2, feat), 0};
  emit_mode(all.subspan(0, 8), d1, d2, 0);

  emit_mode(all.subspan(8, 8), resolve_word_neighbor(g, w1, feat),
            resolve_word_neighbor(g, w2, feat), 1);

  emit_mode(all.subspan(16, 8), resolve_feat_neighbor(g, w1, feat),
            resolve_feat_neighbor(g, w2, feat), 2);
  return out;
}

}  // namespace dattr
