#include "qbox/binomials.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <vector>

namespace qbox {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Largest index supported by the cached tables.  Everything the library
// evaluates stays far below this (sequence depths are bounded by 64 and the
// Bernstein approximants go up to degree 128 in the tests).
constexpr int kMaxIndex = 256;

void check_index(int k, const char* what) {
  if (k < 0 || k > kMaxIndex)
    throw std::out_of_range(std::string(what) + ": index out of range");
}

// central(k) = binom(2k, k), exact.
const std::vector<cpp_int>& central_table() {
  static const std::vector<cpp_int> table = [] {
    std::vector<cpp_int> t(kMaxIndex + 1);
    t[0] = 1;
    for (int k = 1; k <= kMaxIndex; ++k)
      t[k] = t[k - 1] * (2 * k) * (2 * k - 1) / (k * k);
    return t;
  }();
  return table;
}

cpp_int pow4(int k) { return cpp_int(1) << (2 * k); }

// beta(k) = binom(2k, k) / 4^k = (-1)^k binom(-1/2, k), exact rational.
cpp_rational beta_exact(int k) {
  return cpp_rational(central_table()[k], pow4(k));
}

const std::vector<double>& beta_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kMaxIndex + 1);
    for (int k = 0; k <= kMaxIndex; ++k)
      t[k] = beta_exact(k).convert_to<double>();
    return t;
  }();
  return table;
}

const std::vector<double>& half_binom_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kMaxIndex + 1);
    t[0] = 1.0;
    for (int k = 1; k <= kMaxIndex; ++k) {
      // binom(1/2, k) = (-1)^(k+1) binom(2k, k) / ((2k - 1) 4^k); the division
      // by 2k - 1 is exact on the central binomial coefficient.
      cpp_rational r(central_table()[k] / (2 * k - 1), pow4(k));
      t[k] = (k % 2 == 1 ? r : -r).convert_to<double>();
    }
    return t;
  }();
  return table;
}

}  // namespace

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  check_index(n, "binom");
  // Pascal triangle in exact integers, flattened row by row.
  static const std::vector<double> table = [] {
    std::vector<cpp_int> prev, row;
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(kMaxIndex + 1) * (kMaxIndex + 2) / 2);
    for (int m = 0; m <= kMaxIndex; ++m) {
      row.assign(static_cast<std::size_t>(m + 1), 1);
      for (int j = 1; j < m; ++j) row[j] = prev[j - 1] + prev[j];
      for (const cpp_int& v : row) flat.push_back(v.convert_to<double>());
      prev = row;
    }
    return flat;
  }();
  return table[static_cast<std::size_t>(n) * (n + 1) / 2 + k];
}

double half_binom(int k) {
  check_index(k, "half_binom");
  return half_binom_table()[k];
}

double neg_half_binom(int k) {
  check_index(k, "neg_half_binom");
  double b = beta_table()[k];
  return k % 2 == 0 ? b : -b;
}

double c_coeff(int n, int k) {
  if (n == 0) return 0.0;
  check_index(n, "c_coeff");
  check_index(k, "c_coeff");
  if (k < n) return beta_table()[k];
  // beta(k) - beta(k-n) with exact integer cancellation; the two terms agree
  // to leading order for k >> n, so forming the difference in doubles would
  // lose most of the significand.
  cpp_int num = central_table()[k] - central_table()[k - n] * pow4(n);
  return cpp_rational(num, pow4(k)).convert_to<double>();
}

double tail_bound(int K) {
  check_index(K, "tail_bound");
  return beta_table()[K];
}

double c_tail_bound(int n, int K) {
  if (n == 0) return 0.0;
  check_index(n, "c_tail_bound");
  if (K < 0) K = 0;
  check_index(K, "c_tail_bound");
  // |c(n,k)| = beta(k) for k < n and beta(k-n) - beta(k) for k >= n; the sum
  // over k >= max(K, n) telescopes to a window of n consecutive beta terms.
  cpp_rational sum = 0;
  for (int k = K; k < n; ++k) sum += beta_exact(k);
  const int lo = K < n ? 0 : K - n;
  const int hi = K < n ? n - 1 : K - 1;
  for (int j = lo; j <= hi; ++j) sum += beta_exact(j);
  return sum.convert_to<double>();
}

}  // namespace qbox
