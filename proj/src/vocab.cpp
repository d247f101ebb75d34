#include "dattr/vocab.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "dattr/error.hpp"

namespace dattr {

Vocab Vocab::build(std::span<const Sentence> corpus, std::uint64_t min_count) {
  Vocab v;
  std::unordered_map<std::string, std::uint64_t> counts;
  std::vector<std::string> first_seen;
  for (const Sentence& s : corpus) {
    for (const std::string& tok : s.tokens) {
      ++v.total_tokens_;
      auto [it, inserted] = counts.try_emplace(tok, 0);
      if (inserted) first_seen.push_back(tok);
      ++it->second;
    }
  }
  for (const std::string& tok : first_seen) {
    std::uint64_t freq = counts[tok];
    if (freq < min_count) continue;
    v.ids_.emplace(tok, static_cast<std::uint32_t>(v.tokens_.size()));
    v.tokens_.push_back(tok);
    v.frequencies_.push_back(freq);
  }
  return v;
}

std::optional<std::uint32_t> Vocab::id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocab::frequency(std::string_view token) const {
  auto i = id(token);
  return i ? frequencies_[*i] : 0;
}

void Vocab::write_tsv(std::ostream& out) const {
  out << "#total_tokens=" << total_tokens_ << "\n";
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    out << tokens_[i] << '\t' << i << '\t' << frequencies_[i] << '\n';
}

Vocab Vocab::read_tsv(std::istream& in) {
  Vocab v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (line.compare(0, 14, "#total_tokens=") != 0 || eq == std::string::npos)
        throw ParseError("bad vocab header", lineno);
      auto* begin = line.data() + eq + 1;
      auto [p, ec] = std::from_chars(begin, line.data() + line.size(), v.total_tokens_);
      if (ec != std::errc() || p != line.data() + line.size())
        throw ParseError("bad vocab header", lineno);
      continue;
    }
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError("expected 3 tab-separated fields", lineno);
    std::string tok = line.substr(0, t1);
    std::uint32_t id = 0;
    std::uint64_t freq = 0;
    auto parse = [&](std::size_t from, std::size_t to, auto& out_val) {
      auto [p, ec] = std::from_chars(line.data() + from, line.data() + to, out_val);
      if (ec != std::errc() || p != line.data() + to)
        throw ParseError("bad integer field", lineno);
    };
    parse(t1 + 1, t2, id);
    parse(t2 + 1, line.size(), freq);
    if (id != v.tokens_.size()) throw ParseError("vocab ids must be dense and in order", lineno);
    v.ids_.emplace(tok, id);
    v.tokens_.push_back(std::move(tok));
    v.frequencies_.push_back(freq);
  }
  return v;
}

}  // namespace dattr
