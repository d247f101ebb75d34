#include "dattr/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>

#include <zlib.h>

#include "dattr/error.hpp"

namespace dattr {

namespace {

// Pulls lines from either a plain stream or a gzip file.
class LineSource {
 public:
  explicit LineSource(const std::string& path) {
    if (path.size() > 3 && path.ends_with(".gz")) {
      gz_ = gzopen(path.c_str(), "rb");
      if (!gz_) throw IoError("cannot open embedding file: " + path);
    } else {
      plain_.open(path);
      if (!plain_) throw IoError("cannot open embedding file: " + path);
    }
  }
  ~LineSource() {
    if (gz_) gzclose(gz_);
  }
  LineSource(const LineSource&) = delete;
  LineSource& operator=(const LineSource&) = delete;

  bool next(std::string& line) {
    if (!gz_) {
      if (!std::getline(plain_, line)) return false;
    } else {
      line.clear();
      char buf[4096];
      bool got = false;
      while (gzgets(gz_, buf, sizeof buf)) {
        got = true;
        line.append(buf);
        if (!line.empty() && line.back() == '\n') {
          line.pop_back();
          break;
        }
      }
      if (!got) return false;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

 private:
  std::ifstream plain_;
  gzFile gz_ = nullptr;
};

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  LineSource src(path);
  EmbeddingTable table;
  std::string line;
  std::size_t lineno = 0;
  bool first_content = true;

  while (src.next(line)) {
    ++lineno;
    auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (first_content) {
      first_content = false;
      // "<count> <dim>" header: exactly two integer fields.
      if (fields.size() == 2) {
        std::uint64_t a = 0, b = 0;
        auto int_field = [](std::string_view s, std::uint64_t& v) {
          auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
          return ec == std::errc() && p == s.data() + s.size();
        };
        if (int_field(fields[0], a) && int_field(fields[1], b)) continue;
      }
    }

    if (fields.size() < 2)
      throw ParseError("embedding row needs a token and at least one value", lineno);
    const std::size_t d = fields.size() - 1;
    if (table.dimension_ == 0) {
      table.dimension_ = d;
    } else if (d != table.dimension_) {
      throw ParseError("embedding row has " + std::to_string(d) + " values, expected " +
                           std::to_string(table.dimension_),
                       lineno);
    }
    std::vector<double> vec(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!parse_double(fields[i + 1], vec[i]) || !std::isfinite(vec[i]))
        throw ParseError("bad embedding value '" + std::string(fields[i + 1]) + "'", lineno);
    }
    table.rows_[std::string(fields[0])] = std::move(vec);
  }
  return table;
}

bool EmbeddingTable::contains(std::string_view token) const {
  return rows_.contains(std::string(token));
}

std::vector<double> EmbeddingTable::vector_or_zero(std::string_view token) const {
  auto it = rows_.find(std::string(token));
  if (it == rows_.end()) return std::vector<double>(dimension_, 0.0);
  return it->second;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw Error("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                std::to_string(v.size()) + ")");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

std::array<double, kOffsetBlockWidth> offset_feature_block(const EmbeddingTable& emb,
                                                           std::string_view w1,
                                                           std::string_view w2,
                                                           std::string_view feat) {
  const std::vector<double> v1 = emb.vector_or_zero(w1);
  const std::vector<double> v2 = emb.vector_or_zero(w2);
  const std::vector<double> vf = emb.vector_or_zero(feat);
  const std::size_t d = v1.size();

  std::vector<double> d12(d), d1f(d), d2f(d);
  for (std::size_t i = 0; i < d; ++i) {
    d12[i] = v1[i] - v2[i];
    d1f[i] = v1[i] - vf[i];
    d2f[i] = v2[i] - vf[i];
  }
  return {cosine(d12, vf), cosine(d1f, d2f), cosine(d1f, v2), cosine(d2f, v1),
          cosine(v1, v2)};
}

std::vector<double> concat_block(const EmbeddingTable& emb, std::string_view w1,
                                 std::string_view w2, std::string_view feat) {
  std::vector<double> out;
  out.reserve(3 * emb.dimension());
  for (std::string_view w : {w1, w2, feat}) {
    std::vector<double> v = emb.vector_or_zero(w);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace dattr
