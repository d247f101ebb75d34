#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace dattr {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

// Binary confusion-matrix metrics. macro_f1 is the unweighted mean of the
// two per-class F1 values, with the 0/0 -> 0 convention throughout.
struct Metrics {
  std::size_t n = 0;
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;  // positive class = 1
  ClassMetrics positive;
  ClassMetrics negative;
  double accuracy = 0.0;
  double macro_f1 = 0.0;

  std::string to_json() const;
  std::string to_text() const;
};

Metrics evaluate(std::span<const int> pred, std::span<const int> gold);

}  // namespace dattr
