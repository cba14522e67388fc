#include "qbox/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbox/binomials.hpp"

namespace qbox {

namespace {

// Horner evaluation; empty coefficient list = 0.
double eval_poly(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
  return v;
}

}  // namespace

HalfMomentTable moments_from_F(const FTable& f) {
  HalfMomentTable h;
  h.n_max = f.n_max;
  h.m1p = f.f_plus[0];
  h.mxp = f.c1;
  h.mzp = f.c2;
  return h;
}

IntConversion int_from_half(const HalfMomentTable& h, double anchor_x,
                            double anchor_z, int K) {
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  if (h.n_max < 0) throw std::invalid_argument("empty half-integer table");
  const int n_max = h.n_max;
  IntConversion out;
  out.table.n_max = n_max;
  out.table.m1 = h.m1p;
  out.table.mx = Triangular(n_max);
  out.table.mz = Triangular(n_max);
  out.err_x = Triangular(n_max);
  out.err_z = Triangular(n_max);

  for (int n = 0; n <= n_max; ++n) {
    for (int s = 0; s <= n; ++s) {
      // x component: series for s <= n-1, anchored difference at s = n.
      if (s <= n - 1) {
        const int k_hi = std::min(K, n_max - n + 1);
        if (k_hi < K) out.depth_limited = true;
        double sum = 0.0;
        for (int k = 0; k <= k_hi; ++k) {
          const double coef = (k % 2 ? -1.0 : 1.0) * half_binom(k);
          sum += coef * h.mxp(n + k - 1, s + k);
        }
        out.table.mx(n, s) = sum;
        out.err_x(n, s) = tail_bound(k_hi);
      } else {
        const int k_hi = std::min(K, n_max);
        if (k_hi < K) out.depth_limited = true;
        double sum = 0.0;
        for (int k = 0; k <= k_hi; ++k) sum += c_coeff(n, k) * h.mxp(k, k);
        out.table.mx(n, s) = anchor_x - sum;
        out.err_x(n, s) = c_tail_bound(n, k_hi + 1);
      }
      // z component: series for s >= 1, anchored difference at s = 0.
      if (s >= 1) {
        const int k_hi = std::min(K, n_max - n + 1);
        if (k_hi < K) out.depth_limited = true;
        double sum = 0.0;
        for (int k = 0; k <= k_hi; ++k) {
          const double coef = (k % 2 ? -1.0 : 1.0) * half_binom(k);
          sum += coef * h.mzp(n + k - 1, s - 1);
        }
        out.table.mz(n, s) = sum;
        out.err_z(n, s) = tail_bound(k_hi);
      } else {
        const int k_hi = std::min(K, n_max);
        if (k_hi < K) out.depth_limited = true;
        double sum = 0.0;
        for (int k = 0; k <= k_hi; ++k) sum += c_coeff(n, k) * h.mzp(k, 0);
        out.table.mz(n, s) = anchor_z - sum;
        out.err_z(n, s) = c_tail_bound(n, k_hi + 1);
      }
    }
  }
  return out;
}

HalfConversion half_from_int(const IntMomentTable& m, int K) {
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  if (m.n_max < 0) throw std::invalid_argument("empty integer table");
  const int n_max = m.n_max;
  HalfConversion out;
  out.table.n_max = n_max;
  out.table.m1p = m.m1;
  out.table.mxp = Triangular(n_max);
  out.table.mzp = Triangular(n_max);
  out.err_x = Triangular(n_max);
  out.err_z = Triangular(n_max);

  for (int n = 0; n <= n_max; ++n) {
    const int k_hi = std::min(K, n_max - n);
    if (k_hi < K) out.depth_limited = true;
    for (int s = 0; s <= n; ++s) {
      double sx = 0.0, sz = 0.0;
      for (int k = 0; k <= k_hi; ++k) {
        const double coef = (k % 2 ? -1.0 : 1.0) * half_binom(k);
        sx += coef * m.mx(n + k, s + k);
        sz += coef * m.mz(n + k, s);
      }
      out.table.mxp(n, s) = sx;
      out.table.mzp(n, s) = sz;
      out.err_x(n, s) = tail_bound(k_hi);
      out.err_z(n, s) = tail_bound(k_hi);
    }
  }
  return out;
}

MomentConsistency check_moment_table(const IntMomentTable& m, double tol) {
  MomentConsistency rep;
  if (m.n_max < 0) throw std::invalid_argument("empty integer table");
  auto record = [&rep](double residual, const char* condition, int n, int s) {
    if (residual > rep.residual) {
      rep.residual = residual;
      rep.condition = condition;
      rep.n = n;
      rep.s = s;
    }
  };
  record(std::abs(m.m1(0, 0) - 1.0), "normalization", 0, 0);
  for (int n = 0; n < m.n_max; ++n) {
    for (int s = 0; s <= n; ++s) {
      for (const Triangular* comp : {&m.m1, &m.mx, &m.mz}) {
        record(std::abs((*comp)(n, s) - (*comp)(n + 1, s) - (*comp)(n + 1, s + 1)),
               "conservation", n, s);
      }
    }
  }
  for (int n = 0; n <= m.n_max; ++n) {
    for (int s = 0; s <= n; ++s) {
      const double radius =
          std::hypot(m.mx(n, s), m.mz(n, s));
      record(std::max(radius - m.m1(n, s), 0.0), "non-negativity", n, s);
    }
  }
  rep.ok = rep.residual <= tol;
  if (rep.ok) {
    rep.condition.clear();
    rep.n = rep.s = -1;
  }
  return rep;
}

MomentTriple expand_via_row(const IntMomentTable& m, int n, int s, int k) {
  if (!(0 <= s && s <= n && n <= k && k <= m.n_max))
    throw std::invalid_argument("expand_via_row: need 0 <= s <= n <= k <= n_max");
  MomentTriple out;
  for (int r = s; r <= s + (k - n); ++r) {
    const double w = binom(k - n, r - s);
    out.m1 += w * m.m1(k, r);
    out.mx += w * m.mx(k, r);
    out.mz += w * m.mz(k, r);
  }
  return out;
}

double bernstein_rho_n(const IntMomentTable& m, const MatrixPolynomial& p, int n) {
  if (n < 0 || n > m.n_max)
    throw std::invalid_argument("bernstein_rho_n: need 0 <= n <= n_max");
  double sum = 0.0;
  for (int s = 0; s <= n; ++s) {
    const double x = n == 0 ? 0.0 : static_cast<double>(n - s) / n;
    sum += binom(n, s) * (eval_poly(p.p1, x) * m.m1(n, s) +
                          eval_poly(p.px, x) * m.mx(n, s) +
                          eval_poly(p.pz, x) * m.mz(n, s));
  }
  return sum;
}

}  // namespace qbox
