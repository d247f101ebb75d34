#include "dattr/patterns.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>

#include "dattr/error.hpp"

namespace dattr {

namespace {

// Shared sentence ids of two sorted posting lists, ascending, at most cap.
std::vector<std::uint32_t> shared_sentences(std::span<const std::uint32_t> a,
                                            std::span<const std::uint32_t> b,
                                            std::size_t cap) {
  std::vector<std::uint32_t> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size() && out.size() < cap) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { out.push_back(a[i]); ++i; ++j; }
  }
  return out;
}

std::vector<std::size_t> positions_of(const Sentence& s, std::string_view tok) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.tokens.size(); ++i)
    if (s.tokens[i] == tok) out.push_back(i);
  return out;
}

}  // namespace

std::map<Pattern, std::uint64_t> extract_patterns(const SentenceIndex& index,
                                                  std::string_view x, std::string_view y,
                                                  const PatternExtractOptions& opt) {
  if (opt.cap < 1) throw ConfigError("cap must be >= 1");
  std::map<Pattern, std::uint64_t> out;
  const bool same = x == y;

  for (std::uint32_t sid : shared_sentences(index.postings(x), index.postings(y), opt.cap)) {
    const Sentence& s = index.sentence(sid);
    const auto px = positions_of(s, x);
    const auto py = same ? px : positions_of(s, y);
    for (std::size_t i : px) {
      for (std::size_t j : py) {
        if (same && j <= i) continue;  // each unordered position pair once
        if (i == j) continue;
        const std::size_t lo = std::min(i, j), hi = std::max(i, j);
        const std::size_t gap = hi - lo - 1;
        if (gap > opt.max_gap) continue;

        Pattern tok{Pattern::Level::Token, {}};
        tok.sequence.assign(s.tokens.begin() + lo + 1, s.tokens.begin() + hi);
        out[std::move(tok)] += 1;
        if (s.tagged()) {
          Pattern pos{Pattern::Level::Pos, {}};
          pos.sequence.assign(s.tags.begin() + lo + 1, s.tags.begin() + hi);
          out[std::move(pos)] += 1;
        }
      }
    }
  }
  return out;
}

PatternVocab PatternVocab::build(
    const SentenceIndex& index,
    std::span<const std::pair<std::string, std::string>> pairs, std::uint64_t threshold,
    const PatternExtractOptions& opt) {
  std::set<std::pair<std::string, std::string>> unique;
  for (const auto& [w, f] : pairs)
    unique.insert(w <= f ? std::make_pair(w, f) : std::make_pair(f, w));

  std::map<Pattern, std::uint64_t> freq;
  for (const auto& [w, f] : unique)
    for (const auto& [p, n] : extract_patterns(index, w, f, opt)) freq[p] += n;

  // Order: frequency descending, ties by pattern order (level, sequence).
  std::vector<std::pair<const Pattern*, std::uint64_t>> kept;
  for (const auto& [p, n] : freq)
    if (n > threshold) kept.emplace_back(&p, n);
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return *a.first < *b.first;
  });

  PatternVocab v;
  v.threshold_ = threshold;
  v.max_gap_ = opt.max_gap;
  for (const auto& [p, n] : kept) {
    v.index_.emplace(*p, static_cast<std::uint32_t>(v.patterns_.size()));
    v.patterns_.push_back(*p);
    v.frequencies_.push_back(n);
  }
  return v;
}

std::optional<std::uint32_t> PatternVocab::index(const Pattern& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string join_sequence(const std::vector<std::string>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out.push_back(' ');
    out += seq[i];
  }
  return out;
}

}  // namespace

void PatternVocab::write_tsv(std::ostream& out) const {
  out << "#threshold=" << threshold_ << " max_gap=" << max_gap_ << "\n";
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    out << join_sequence(patterns_[i].sequence) << '\t'
        << (patterns_[i].level == Pattern::Level::Token ? "token" : "pos") << '\t'
        << frequencies_[i] << '\t' << i << '\n';
  }
}

PatternVocab PatternVocab::read_tsv(std::istream& in) {
  PatternVocab v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      unsigned long long thr = 0, gap = 0;
      if (std::sscanf(line.c_str(), "#threshold=%llu max_gap=%llu", &thr, &gap) != 2)
        throw ParseError("bad pattern vocab header", lineno);
      v.threshold_ = thr;
      v.max_gap_ = gap;
      continue;
    }
    std::array<std::size_t, 3> tabs{};
    std::size_t pos = 0;
    for (std::size_t t = 0; t < 3; ++t) {
      pos = line.find('\t', pos);
      if (pos == std::string::npos) throw ParseError("expected 4 tab-separated fields", lineno);
      tabs[t] = pos++;
    }
    Pattern p;
    std::string seq = line.substr(0, tabs[0]);
    if (!seq.empty()) {
      std::size_t start = 0;
      while (start <= seq.size()) {
        auto sp = seq.find(' ', start);
        if (sp == std::string::npos) { p.sequence.push_back(seq.substr(start)); break; }
        p.sequence.push_back(seq.substr(start, sp - start));
        start = sp + 1;
      }
    }
    std::string level = line.substr(tabs[0] + 1, tabs[1] - tabs[0] - 1);
    if (level == "token") p.level = Pattern::Level::Token;
    else if (level == "pos") p.level = Pattern::Level::Pos;
    else throw ParseError("unknown pattern level '" + level + "'", lineno);

    std::uint64_t freq = 0;
    std::uint32_t idx = 0;
    auto parse = [&](std::size_t from, std::size_t to, auto& out_val) {
      auto [q, ec] = std::from_chars(line.data() + from, line.data() + to, out_val);
      if (ec != std::errc() || q != line.data() + to)
        throw ParseError("bad integer field", lineno);
    };
    parse(tabs[1] + 1, tabs[2], freq);
    parse(tabs[2] + 1, line.size(), idx);
    if (idx != v.patterns_.size())
      throw ParseError("pattern indices must be dense and in order", lineno);
    v.index_.emplace(p, idx);
    v.patterns_.push_back(std::move(p));
    v.frequencies_.push_back(freq);
  }
  return v;
}

std::size_t pattern_block_width(const PatternVocab& vocab, PatternBlockMode mode) {
  return mode == PatternBlockMode::Stacked ? 2 * vocab.size() : vocab.size();
}

std::vector<double> pattern_feature_block(const PatternVocab& vocab,
                                          const SentenceIndex& index,
                                          std::string_view w1, std::string_view w2,
                                          std::string_view feat, PatternBlockMode mode,
                                          const PatternExtractOptions& opt) {
  std::vector<double> out(pattern_block_width(vocab, mode), 0.0);
  const auto add = [&](std::string_view w, std::size_t offset, double sign) {
    for (const auto& [p, n] : extract_patterns(index, w, feat, opt)) {
      if (auto idx = vocab.index(p))
        out[offset + *idx] += sign * static_cast<double>(n);
    }
  };
  switch (mode) {
    case PatternBlockMode::Diff:
      add(w1, 0, 1.0);
      add(w2, 0, -1.0);
      break;
    case PatternBlockMode::W1:
      add(w1, 0, 1.0);
      break;
    case PatternBlockMode::Stacked:
      add(w1, 0, 1.0);
      add(w2, vocab.size(), 1.0);
      break;
  }
  return out;
}

}  // namespace dattr
