#include "dattr/text.hpp"

#include <cstdint>
#include <fstream>

#include "dattr/error.hpp"

namespace dattr {

namespace {

bool is_space_cp(char32_t cp) {
  switch (cp) {
    case U'\t': case U'\n': case U'\v': case U'\f': case U'\r': case U' ':
    case 0x0085: case 0x00A0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0x00A1: case 0x00AB: case 0x00B7: case 0x00BB: case 0x00BF:
    case 0x3001: case 0x3002:
      return true;
    default:
      return (cp >= 0x2010 && cp <= 0x2027) ||  // dashes, quotes, ellipsis
             (cp >= 0x2030 && cp <= 0x205E) ||  // remaining general punctuation
             (cp >= 0x2E00 && cp <= 0x2E7F);    // supplemental punctuation
  }
}

// Decodes the UTF-8 sequence starting at `pos`, advancing it. Rejects
// overlong forms, surrogates and values past U+10FFFF.
char32_t decode_utf8(std::string_view text, std::size_t& pos) {
  const auto bad = [&] {
    throw ParseError("invalid UTF-8 at byte offset " + std::to_string(pos));
  };
  const auto byte = [&](std::size_t i) -> std::uint8_t {
    return static_cast<std::uint8_t>(text[i]);
  };

  std::uint8_t b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
  else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
  else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
  else bad();

  if (pos + len > text.size()) bad();
  for (int i = 1; i < len; ++i) {
    std::uint8_t b = byte(pos + i);
    if ((b & 0xC0) != 0x80) bad();
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) bad();
  pos += len;
  return cp;
}

struct Codepoint {
  char32_t cp;
  std::size_t begin;
  std::size_t end;
};

std::vector<Codepoint> scan(std::string_view text) {
  std::vector<Codepoint> out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t begin = pos;
    char32_t cp = decode_utf8(text, pos);
    out.push_back({cp, begin, pos});
  }
  return out;
}

void ascii_lower(std::string& s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
}

// Strips leading/trailing punctuation codepoints and lowercases; returns ""
// when nothing survives.
std::string normalize_token(const std::vector<Codepoint>& cps, std::size_t from,
                            std::size_t to, std::string_view text) {
  while (from < to && is_punct_cp(cps[from].cp)) ++from;
  while (to > from && is_punct_cp(cps[to - 1].cp)) --to;
  if (from >= to) return {};
  std::string tok(text.substr(cps[from].begin, cps[to - 1].end - cps[from].begin));
  ascii_lower(tok);
  return tok;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<Codepoint> cps = scan(text);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space_cp(cps[i].cp)) ++i;
    std::size_t start = i;
    while (i < cps.size() && !is_space_cp(cps[i].cp)) ++i;
    if (i > start) {
      std::string tok = normalize_token(cps, start, i, text);
      if (!tok.empty()) tokens.push_back(std::move(tok));
    }
  }
  return tokens;
}

Sentence parse_tagged(std::string_view line) {
  std::vector<Codepoint> cps = scan(line);
  Sentence out;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space_cp(cps[i].cp)) ++i;
    std::size_t start = i;
    while (i < cps.size() && !is_space_cp(cps[i].cp)) ++i;
    if (i == start) continue;

    std::string_view field =
        line.substr(cps[start].begin, cps[i - 1].end - cps[start].begin);
    std::string tag = "_";  // placeholder for untagged fields
    std::string_view word = field;
    if (auto slash = field.rfind('/'); slash != std::string_view::npos) {
      if (slash + 1 < field.size()) tag = std::string(field.substr(slash + 1));
      word = field.substr(0, slash);
    }
    std::vector<Codepoint> wcps = scan(word);
    std::string tok = normalize_token(wcps, 0, wcps.size(), word);
    if (!tok.empty()) {
      out.tokens.push_back(std::move(tok));
      out.tags.push_back(std::move(tag));
    }
  }
  if (out.tokens.empty()) out.tags.clear();
  return out;
}

std::vector<Sentence> read_corpus(const std::string& path, bool tagged) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path);
  std::vector<Sentence> sentences;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Sentence s;
    if (tagged) {
      s = parse_tagged(line);
    } else {
      s.tokens = tokenize(line);
    }
    if (!s.tokens.empty()) sentences.push_back(std::move(s));
  }
  return sentences;
}

}  // namespace dattr
