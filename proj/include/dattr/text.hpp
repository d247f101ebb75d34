#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dattr {

// One corpus sentence. `tags` is empty for plain text and parallel to
// `tokens` when the corpus carries token/POS fields.
struct Sentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;

  bool tagged() const { return !tags.empty(); }
};

// Lowercases, splits on Unicode whitespace and strips leading/trailing
// punctuation from each token; empty tokens are dropped. Internal
// punctuation is kept ("a—b" stays one token). Lowercasing is ASCII-only.
// Throws ParseError naming the byte offset on invalid UTF-8.
std::vector<std::string> tokenize(std::string_view text);

// Parses a pre-tagged line of whitespace-separated token/POS fields. The
// token part is normalized like tokenize(); the tag (text after the last
// '/') is kept verbatim. Fields without '/' get an empty tag.
Sentence parse_tagged(std::string_view line);

// Reads a corpus file, one sentence per line. Blank lines are skipped.
std::vector<Sentence> read_corpus(const std::string& path, bool tagged = false);

}  // namespace dattr
