#include "qbox/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qbox/rng.hpp"

namespace qbox {

namespace {

void check_key(const std::string& r) {
  if (r.empty()) throw std::invalid_argument("outcome string must be non-empty");
  for (char c : r)
    if (c != '0' && c != '1')
      throw std::invalid_argument("outcome string must be binary: '" + r + "'");
}

}  // namespace

std::vector<std::string> all_outcome_strings(int length) {
  if (length < 0) throw std::invalid_argument("string length must be non-negative");
  std::vector<std::string> out;
  out.reserve(std::size_t{1} << length);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << length); ++bits) {
    std::string r(static_cast<std::size_t>(length), '0');
    for (int j = 0; j < length; ++j)
      if (bits >> (length - 1 - j) & 1) r[static_cast<std::size_t>(j)] = '1';
    out.push_back(std::move(r));
  }
  return out;
}

int switch_count(const std::string& r) {
  check_key(r);
  int s = 0;
  for (std::size_t j = 1; j < r.size(); ++j) s += r[j] != r[j - 1];
  return s;
}

const std::map<std::string, double>& ProbabilityTable::side(char process) const {
  if (process == 'a') return p_a;
  if (process == 'b') return p_b;
  throw std::invalid_argument("process must be 'a' or 'b'");
}

double ProbabilityTable::at(char process, const std::string& r) const {
  const auto& m = side(process);
  auto it = m.find(r);
  if (it == m.end())
    throw TableStructureError("missing entry " + std::string(1, process) + ":" + r);
  return it->second;
}

std::vector<std::string> missing_keys(const ProbabilityTable& t) {
  std::vector<std::string> missing;
  for (int length = 1; length <= t.depth; ++length) {
    for (const std::string& r : all_outcome_strings(length)) {
      if (!t.p_a.count(r)) missing.push_back("a:" + r);
      if (!t.p_b.count(r)) missing.push_back("b:" + r);
    }
  }
  return missing;
}

AdmissibilityReport validate_admissible(const ProbabilityTable& t, double tol) {
  if (t.depth < 1) throw TableStructureError("table depth must be >= 1");
  {
    auto missing = missing_keys(t);
    if (!missing.empty()) {
      std::ostringstream msg;
      msg << missing.size() << " absent key(s):";
      for (std::size_t j = 0; j < missing.size() && j < 8; ++j) msg << ' ' << missing[j];
      if (missing.size() > 8) msg << " ...";
      throw TableStructureError(msg.str());
    }
  }
  for (const auto& [r, v] : t.p_a) check_key(r);
  for (const auto& [r, v] : t.p_b) check_key(r);

  AdmissibilityReport rep;
  rep.ok = true;
  auto record = [&rep](double residual, char process, const std::string& witness) {
    if (residual > rep.worst_residual) {
      rep.worst_residual = residual;
      rep.process = process;
      rep.witness = witness;
    }
  };
  for (char process : {'a', 'b'}) {
    const auto& m = t.side(process);
    for (const auto& [r, v] : m) {
      const double overshoot = std::max(-v, v - 1.0);
      if (overshoot > 0.0) record(overshoot, process, r);
    }
    record(std::abs(m.at("0") + m.at("1") - 1.0), process, "");
    for (int length = 1; length < t.depth; ++length) {
      for (const std::string& r : all_outcome_strings(length))
        record(std::abs(m.at(r) - m.at(r + "0") - m.at(r + "1")), process, r);
    }
  }
  if (rep.worst_residual > tol) rep.ok = false;
  return rep;
}

ProbabilityTable random_admissible(int depth, std::uint64_t seed) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  std::mt19937_64 rng(seed);
  ProbabilityTable t;
  t.depth = depth;
  for (auto* m : {&t.p_a, &t.p_b}) {
    const double u = uniform01(rng);
    (*m)["0"] = u;
    (*m)["1"] = 1.0 - u;
    for (int length = 1; length < depth; ++length) {
      for (const std::string& r : all_outcome_strings(length)) {
        const double parent = (*m)[r];
        const double v = uniform01(rng);
        (*m)[r + "0"] = v * parent;
        (*m)[r + "1"] = (1.0 - v) * parent;
      }
    }
  }
  return t;
}

FBuildOutcome table_to_F(const ProbabilityTable& t, double tol) {
  {
    AdmissibilityReport rep = validate_admissible(t, tol);
    if (!rep.ok) {
      std::ostringstream msg;
      msg << "inadmissible table: residual " << rep.worst_residual << " at "
          << rep.process << ":" << (rep.witness.empty() ? "<root>" : rep.witness);
      throw std::invalid_argument(msg.str());
    }
  }

  const int n_max = t.depth - 1;
  FTable f;
  f.n_max = n_max;
  struct Extreme {
    double lo, hi, sum;
    int count;
    std::string lo_r, hi_r;
  };
  for (int pi = 0; pi < 2; ++pi) {
    const char process = pi == 0 ? 'a' : 'b';
    const auto& m = t.side(process);
    for (int r1 = 0; r1 < 2; ++r1) f.f[pi][r1] = Triangular(n_max);
    // One grouping pass per (r1, n, s) cell.
    std::vector<std::vector<std::vector<Extreme>>> cells(2);
    for (auto& per_r1 : cells) {
      per_r1.resize(static_cast<std::size_t>(n_max) + 1);
      for (int n = 0; n <= n_max; ++n)
        per_r1[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1,
                                                   Extreme{0, 0, 0, 0, "", ""});
    }
    for (const auto& [r, v] : m) {
      const int n = static_cast<int>(r.size()) - 1;
      const int s = switch_count(r);
      const int r1 = r[0] == '1';
      Extreme& e = cells[static_cast<std::size_t>(r1)][static_cast<std::size_t>(n)]
                        [static_cast<std::size_t>(s)];
      if (e.count == 0) {
        e = Extreme{v, v, v, 1, r, r};
      } else {
        if (v < e.lo) { e.lo = v; e.lo_r = r; }
        if (v > e.hi) { e.hi = v; e.hi_r = r; }
        e.sum += v;
        ++e.count;
      }
    }
    for (int r1 = 0; r1 < 2; ++r1) {
      for (int n = 0; n <= n_max; ++n) {
        for (int s = 0; s <= n; ++s) {
          const Extreme& e = cells[static_cast<std::size_t>(r1)]
                                  [static_cast<std::size_t>(n)][static_cast<std::size_t>(s)];
          const double spread = e.hi - e.lo;
          if (spread > tol) {
            SwitchWitness w;
            w.process = process;
            w.r1 = r1;
            w.n = n;
            w.s = s;
            w.lo_r = e.lo_r;
            w.hi_r = e.hi_r;
            w.lo = e.lo;
            w.hi = e.hi;
            w.spread = spread;
            return FBuildOutcome{std::nullopt, w};
          }
          if (spread > f.max_spread) f.max_spread = spread;
          f.f[pi][r1](n, s) = e.sum / e.count;
        }
      }
    }
  }
  for (int pi = 0; pi < 2; ++pi) {
    f.f_plus[pi] = Triangular(n_max);
    f.f_minus[pi] = Triangular(n_max);
  }
  f.c1 = Triangular(n_max);
  f.c2 = Triangular(n_max);
  f.f_plus_avg = Triangular(n_max);
  for (int n = 0; n <= n_max; ++n) {
    for (int s = 0; s <= n; ++s) {
      for (int pi = 0; pi < 2; ++pi) {
        f.f_plus[pi](n, s) = f.f[pi][1](n, s) + f.f[pi][0](n, s);
        f.f_minus[pi](n, s) = f.f[pi][1](n, s) - f.f[pi][0](n, s);
      }
      f.c1(n, s) = 0.5 * (f.f_minus[0](n, s) + f.f_minus[1](n, s));
      f.c2(n, s) = 0.5 * (f.f_minus[0](n, s) - f.f_minus[1](n, s));
      f.f_plus_avg(n, s) = 0.5 * (f.f_plus[0](n, s) + f.f_plus[1](n, s));
    }
  }
  return FBuildOutcome{std::move(f), std::nullopt};
}

}  // namespace qbox
