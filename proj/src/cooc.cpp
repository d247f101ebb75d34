#include "dattr/cooc.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

#include "dattr/error.hpp"

namespace dattr {

std::uint32_t CoocTable::intern(std::string_view token) {
  auto it = ids_.find(std::string(token));
  if (it != ids_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(tokens_.size());
  ids_.emplace(std::string(token), id);
  tokens_.emplace_back(token);
  marginal_.push_back(0);
  out_marginal_.push_back(0);
  in_marginal_.push_back(0);
  return id;
}

std::int64_t CoocTable::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

CoocTable CoocTable::count(std::span<const Sentence> corpus, const Vocab& vocab,
                           int window) {
  if (window < 1) throw ConfigError("window must be >= 1");
  CoocTable t;
  t.directed_ = true;
  t.window_ = window;

  // Per-sentence token ids; -1 marks out-of-vocab positions, which still
  // occupy window slots.
  std::vector<std::int64_t> ids;
  for (const Sentence& s : corpus) {
    ids.clear();
    ids.reserve(s.tokens.size());
    for (const std::string& tok : s.tokens) {
      auto vid = vocab.id(tok);
      ids.push_back(vid ? static_cast<std::int64_t>(t.intern(tok)) : std::int64_t{-1});
    }
    const std::size_t n = ids.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (ids[i] < 0) continue;
      const std::size_t hi = std::min(n, i + 1 + static_cast<std::size_t>(window));
      for (std::size_t j = i + 1; j < hi; ++j) {
        if (ids[j] < 0) continue;
        auto a = static_cast<std::uint32_t>(ids[i]);
        auto b = static_cast<std::uint32_t>(ids[j]);
        t.right_[key(a, b)] += 1;
        t.marginal_[a] += 1;
        t.marginal_[b] += 1;
        t.out_marginal_[a] += 1;
        t.in_marginal_[b] += 1;
        t.total_mass_ += 2;
      }
    }
  }
  return t;
}

std::uint64_t CoocTable::count(std::string_view a, std::string_view b) const {
  std::int64_t ia = find(a), ib = find(b);
  if (ia < 0 || ib < 0) return 0;
  auto ua = static_cast<std::uint32_t>(ia), ub = static_cast<std::uint32_t>(ib);
  if (directed_) {
    auto lookup = [&](std::uint32_t x, std::uint32_t y) -> std::uint64_t {
      auto it = right_.find(key(x, y));
      return it == right_.end() ? 0 : it->second;
    };
    if (ua == ub) return 2 * lookup(ua, ua);
    return lookup(ua, ub) + lookup(ub, ua);
  }
  auto it = sym_.find(key(std::min(ua, ub), std::max(ua, ub)));
  return it == sym_.end() ? 0 : it->second;
}

std::uint64_t CoocTable::marginal(std::string_view w) const {
  std::int64_t i = find(w);
  return i < 0 ? 0 : marginal_[static_cast<std::size_t>(i)];
}

std::uint64_t CoocTable::directed_count(std::string_view target,
                                        std::string_view context, Direction d) const {
  if (!directed_) throw ConfigError("co-occurrence table has no direction detail");
  std::int64_t it_ = find(target), ic = find(context);
  if (it_ < 0 || ic < 0) return 0;
  auto t = static_cast<std::uint32_t>(it_), c = static_cast<std::uint32_t>(ic);
  auto k = d == Direction::Right ? key(t, c) : key(c, t);
  auto it = right_.find(k);
  return it == right_.end() ? 0 : it->second;
}

std::uint64_t CoocTable::context_marginal(std::string_view context, Direction d) const {
  if (!directed_) throw ConfigError("co-occurrence table has no direction detail");
  std::int64_t i = find(context);
  if (i < 0) return 0;
  auto u = static_cast<std::size_t>(i);
  return d == Direction::Right ? in_marginal_[u] : out_marginal_[u];
}

void CoocTable::merge(const CoocTable& other) {
  if (total_mass_ == 0 && tokens_.empty()) {
    directed_ = other.directed_;
    window_ = other.window_;
  }
  if (window_ != other.window_) throw ConfigError("cannot merge tables with different windows");
  if (directed_ != other.directed_)
    throw ConfigError("cannot merge directed and symmetric-only tables");

  std::vector<std::uint32_t> remap(other.tokens_.size());
  for (std::size_t i = 0; i < other.tokens_.size(); ++i)
    remap[i] = intern(other.tokens_[i]);
  auto& pairs = directed_ ? right_ : sym_;
  const auto& opairs = directed_ ? other.right_ : other.sym_;
  for (const auto& [k, v] : opairs) {
    std::uint32_t a = remap[static_cast<std::uint32_t>(k >> 32)];
    std::uint32_t b = remap[static_cast<std::uint32_t>(k & 0xFFFFFFFFu)];
    if (!directed_ && a > b) std::swap(a, b);
    pairs[key(a, b)] += v;
  }
  for (std::size_t i = 0; i < other.tokens_.size(); ++i) {
    marginal_[remap[i]] += other.marginal_[i];
    out_marginal_[remap[i]] += other.out_marginal_[i];
    in_marginal_[remap[i]] += other.in_marginal_[i];
  }
  total_mass_ += other.total_mass_;
}

void CoocTable::for_each_directed(
    const std::function<void(std::uint32_t, std::uint32_t, Direction,
                             std::uint64_t)>& fn) const {
  if (!directed_) throw ConfigError("co-occurrence table has no direction detail");
  for (const auto& [k, v] : right_) {
    auto a = static_cast<std::uint32_t>(k >> 32);
    auto b = static_cast<std::uint32_t>(k & 0xFFFFFFFFu);
    // b follows a: context b sits right of target a, a sits left of target b.
    fn(a, b, Direction::Right, v);
    fn(b, a, Direction::Left, v);
  }
}

void CoocTable::write_tsv(std::ostream& out) const {
  // Canonical (min, max) -> symmetric count.
  std::unordered_map<std::uint64_t, std::uint64_t> canon;
  if (directed_) {
    for (const auto& [k, v] : right_) {
      auto a = static_cast<std::uint32_t>(k >> 32);
      auto b = static_cast<std::uint32_t>(k & 0xFFFFFFFFu);
      canon[key(std::min(a, b), std::max(a, b))] += a == b ? 2 * v : v;
    }
  } else {
    canon = sym_;
  }

  std::map<std::pair<std::string_view, std::string_view>, std::uint64_t> rows;
  for (const auto& [k, v] : canon) {
    auto a = static_cast<std::uint32_t>(k >> 32);
    auto b = static_cast<std::uint32_t>(k & 0xFFFFFFFFu);
    rows[{tokens_[a], tokens_[b]}] = v;
    if (a != b) rows[{tokens_[b], tokens_[a]}] = v;
  }

  out << "#window=" << window_ << " total=" << total_mass_ << "\n";
  for (const auto& [pair, v] : rows)
    out << pair.first << '\t' << pair.second << '\t' << v << '\n';
}

CoocTable CoocTable::read_tsv(std::istream& in) {
  CoocTable t;
  t.directed_ = false;

  std::string line;
  std::size_t lineno = 0;
  std::uint64_t declared_total = 0;
  bool saw_header = false;
  std::uint64_t running_total = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      int window = 0;
      unsigned long long total = 0;
      if (std::sscanf(line.c_str(), "#window=%d total=%llu", &window, &total) != 2)
        throw ParseError("bad co-occurrence header", lineno);
      t.window_ = window;
      declared_total = total;
      saw_header = true;
      continue;
    }
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError("expected 3 tab-separated fields", lineno);
    std::uint64_t c = 0;
    auto [p, ec] = std::from_chars(line.data() + t2 + 1, line.data() + line.size(), c);
    if (ec != std::errc() || p != line.data() + line.size())
      throw ParseError("bad count field", lineno);

    std::uint32_t a = t.intern(line.substr(0, t1));
    std::uint32_t b = t.intern(line.substr(t1 + 1, t2 - t1 - 1));
    auto k = key(std::min(a, b), std::max(a, b));
    auto [it, inserted] = t.sym_.try_emplace(k, c);
    if (!inserted && it->second != c)
      throw ParseError("asymmetric counts for a word pair", lineno);
    t.marginal_[a] += c;
    running_total += c;
  }
  if (!saw_header) throw ParseError("missing #window header");
  t.total_mass_ = running_total;
  if (declared_total != running_total)
    throw ParseError("header total does not match row sum");
  return t;
}

}  // namespace dattr
