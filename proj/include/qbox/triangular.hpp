#pragma once

/*
 * Triangular: a ragged lower-triangular array of doubles indexed by a pair
 * (n, s) with 0 <= s <= n <= n_max.  Moment tables, grouped-frequency tables
 * and per-entry error-bound tables all share this shape: row n corresponds to
 * measurement sequences of length n+1 and column s to the number of outcome
 * switches along the sequence.
 */

#include <cassert>
#include <cstddef>
#include <vector>

namespace qbox {

class Triangular {
 public:
  Triangular() = default;

  explicit Triangular(int n_max, double fill = 0.0) : n_max_(n_max) {
    assert(n_max >= -1);
    rows_.reserve(static_cast<std::size_t>(n_max + 1));
    for (int n = 0; n <= n_max; ++n)
      rows_.emplace_back(static_cast<std::size_t>(n + 1), fill);
  }

  int n_max() const { return n_max_; }

  bool contains(int n, int s) const {
    return n >= 0 && n <= n_max_ && s >= 0 && s <= n;
  }

  double operator()(int n, int s) const {
    assert(contains(n, s));
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)];
  }

  double& operator()(int n, int s) {
    assert(contains(n, s));
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)];
  }

  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  int n_max_ = -1;
  std::vector<std::vector<double>> rows_;
};

}  // namespace qbox
