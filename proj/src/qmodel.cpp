#include "qbox/qmodel.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace qbox {

namespace {

using Eigen::MatrixXcd;

void check_model_shape(const FiniteDimModel& m) {
  if (m.dim < 1 || m.dim > kMaxModelDim)
    throw std::invalid_argument("model dimension must be in [1, 32]");
  for (const MatrixXcd* p : {&m.A, &m.B, &m.rho0})
    if (p->rows() != m.dim || p->cols() != m.dim)
      throw std::invalid_argument("model matrices must be dim x dim");
}

void check_depth(int depth) {
  if (depth < 1 || depth > kMaxTableDepth)
    throw std::invalid_argument("depth must be in [1, 16]");
}

double max_abs(const MatrixXcd& m) {
  return m.cwiseAbs().maxCoeff();
}

// Walks the binary outcome tree, evolving the unnormalised state by
// rho -> p rho p at each step, and calls visit(r, tr(rho)) on every prefix.
void walk_outcomes(const FiniteDimModel& m, char first, int depth,
                   const std::function<void(const std::string&, double)>& visit) {
  check_model_shape(m);
  const MatrixXcd eye = MatrixXcd::Identity(m.dim, m.dim);
  const MatrixXcd proj[2][2] = {{eye - m.A, m.A}, {eye - m.B, m.B}};
  const int first_idx = first == 'a' ? 0 : 1;
  if (first != 'a' && first != 'b')
    throw std::invalid_argument("first measurement must be 'a' or 'b'");

  std::string r;
  std::function<void(const MatrixXcd&, int)> descend =
      [&](const MatrixXcd& rho, int pos) {
        if (pos == depth) return;
        const int which = (first_idx + pos) % 2;
        for (int outcome = 0; outcome < 2; ++outcome) {
          const MatrixXcd& p = proj[which][outcome];
          MatrixXcd next = p * rho * p;
          r.push_back(static_cast<char>('0' + outcome));
          visit(r, next.trace().real());
          descend(next, pos + 1);
          r.pop_back();
        }
      };
  descend(m.rho0, 0);
}

}  // namespace

ModelReport validate_model(const FiniteDimModel& m, double tol, double psd_floor) {
  check_model_shape(m);
  ModelReport rep;
  double proj = 0.0;
  for (const MatrixXcd* p : {&m.A, &m.B}) {
    proj = std::max(proj, max_abs(*p * *p - *p));
    proj = std::max(proj, max_abs(*p - p->adjoint()));
  }
  rep.proj_residual = std::max(proj, max_abs(m.rho0 - m.rho0.adjoint()));
  rep.trace_residual = std::abs(m.rho0.trace().real() - 1.0) +
                       std::abs(m.rho0.trace().imag());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (m.rho0 + m.rho0.adjoint()),
                                              Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.ok = rep.proj_residual <= tol && rep.trace_residual <= tol &&
           rep.min_eigenvalue >= -psd_floor;
  return rep;
}

std::map<std::string, double> simulate_sequence(const FiniteDimModel& m,
                                                char first, int L) {
  check_depth(L);
  std::map<std::string, double> out;
  walk_outcomes(m, first, L, [&](const std::string& r, double p) {
    if (static_cast<int>(r.size()) == L) out[r] = p;
  });
  return out;
}

ProbabilityTable simulate_table(const FiniteDimModel& m, int depth) {
  check_depth(depth);
  ProbabilityTable t;
  t.depth = depth;
  walk_outcomes(m, 'a', depth,
                [&](const std::string& r, double p) { t.p_a[r] = p; });
  walk_outcomes(m, 'b', depth,
                [&](const std::string& r, double p) { t.p_b[r] = p; });
  return t;
}

std::optional<std::pair<double, double>> conditional_prepost(
    const FiniteDimModel& m, int pre, int post, double tol) {
  if ((pre != 0 && pre != 1) || (post != 0 && post != 1))
    throw std::invalid_argument("pre/post outcomes must be 0 or 1");
  const auto dist = simulate_sequence(m, 'a', 3);
  std::string r{static_cast<char>('0' + pre), '0', static_cast<char>('0' + post)};
  const double p0 = dist.at(r);
  r[1] = '1';
  const double p1 = dist.at(r);
  const double event = p0 + p1;
  if (event <= tol) return std::nullopt;
  return std::make_pair(p0 / event, p1 / event);
}

AtomicReport validate_atomic(const AtomicState& st, double tol) {
  AtomicReport rep;
  rep.ok = true;
  if (st.atoms.empty()) {
    rep.ok = false;
    rep.detail = "no atoms";
    return rep;
  }
  double wsum = 0.0;
  auto record = [&rep](double residual, const std::string& what) {
    if (residual > rep.worst_residual) {
      rep.worst_residual = residual;
      rep.detail = what;
    }
  };
  for (const Atom& a : st.atoms) {
    record(std::max(-a.w, 0.0), "negative weight");
    record(std::max({-a.t, a.t - 1.0, 0.0}), "t outside [0,1]");
    const double norm2 = a.bloch[0] * a.bloch[0] + a.bloch[1] * a.bloch[1] +
                         a.bloch[2] * a.bloch[2];
    record(std::max(norm2 - 1.0, 0.0), "bloch vector longer than 1");
    wsum += a.w;
  }
  record(std::abs(wsum - 1.0), "weights do not sum to 1");
  rep.ok = rep.worst_residual <= tol;
  return rep;
}

AtomF atomic_f(const AtomicState& st, int n, int s) {
  if (n < 0 || s < 0 || s > n)
    throw std::invalid_argument("need 0 <= s <= n");
  AtomF out;
  for (const Atom& a : st.atoms) {
    const double base = a.w * std::pow(a.t, n - s) * std::pow(1.0 - a.t, s);
    const double root = std::sqrt(a.t * (1.0 - a.t));
    const double bx = a.bloch[0], bz = a.bloch[2];
    out.f_plus += base;
    out.f_minus_a += base * bz;
    out.f_minus_b += base * (2.0 * root * bx + (2.0 * a.t - 1.0) * bz);
    out.c1 += base * (root * bx + a.t * bz);
    out.c2 += base * (-root * bx + (1.0 - a.t) * bz);
  }
  return out;
}

ProbabilityTable atomic_to_table(const AtomicState& st, int depth) {
  check_depth(depth);
  ProbabilityTable t;
  t.depth = depth;
  // Group values depend on r only through (n, s, r1); evaluate each cell once.
  std::vector<Triangular> half(4);  // [process * 2 + r1]
  for (auto& g : half) g = Triangular(depth - 1);
  for (int n = 0; n <= depth - 1; ++n) {
    for (int s = 0; s <= n; ++s) {
      const AtomF f = atomic_f(st, n, s);
      half[0](n, s) = 0.5 * (f.f_plus - f.f_minus_a);  // a, r1 = 0
      half[1](n, s) = 0.5 * (f.f_plus + f.f_minus_a);  // a, r1 = 1
      half[2](n, s) = 0.5 * (f.f_plus - f.f_minus_b);  // b, r1 = 0
      half[3](n, s) = 0.5 * (f.f_plus + f.f_minus_b);  // b, r1 = 1
    }
  }
  for (int length = 1; length <= depth; ++length) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << length); ++bits) {
      std::string r(static_cast<std::size_t>(length), '0');
      for (int j = 0; j < length; ++j)
        if (bits >> (length - 1 - j) & 1) r[static_cast<std::size_t>(j)] = '1';
      const int n = length - 1;
      const int s = switch_count(r);
      const int r1 = r[0] == '1';
      t.p_a[r] = half[static_cast<std::size_t>(r1)](n, s);
      t.p_b[r] = half[static_cast<std::size_t>(2 + r1)](n, s);
    }
  }
  return t;
}

FiniteDimModel atomic_to_finite_model(const AtomicState& st) {
  const int n_atoms = static_cast<int>(st.atoms.size());
  if (n_atoms < 1 || 2 * n_atoms > kMaxModelDim)
    throw std::invalid_argument("need between 1 and 16 atoms");
  FiniteDimModel m;
  m.dim = 2 * n_atoms;
  m.A = MatrixXcd::Zero(m.dim, m.dim);
  m.B = MatrixXcd::Zero(m.dim, m.dim);
  m.rho0 = MatrixXcd::Zero(m.dim, m.dim);
  for (int j = 0; j < n_atoms; ++j) {
    const Atom& a = st.atoms[static_cast<std::size_t>(j)];
    const double root = std::sqrt(a.t * (1.0 - a.t));
    const int o = 2 * j;
    m.A(o, o) = 1.0;
    m.B(o, o) = a.t;
    m.B(o, o + 1) = root;
    m.B(o + 1, o) = root;
    m.B(o + 1, o + 1) = 1.0 - a.t;
    // rho block: w (1 + bloch . sigma) / 2 with sigma the Pauli triple.
    const double bx = a.bloch[0], by = a.bloch[1], bz = a.bloch[2];
    m.rho0(o, o) = 0.5 * a.w * (1.0 + bz);
    m.rho0(o + 1, o + 1) = 0.5 * a.w * (1.0 - bz);
    m.rho0(o, o + 1) = 0.5 * a.w * std::complex<double>(bx, -by);
    m.rho0(o + 1, o) = 0.5 * a.w * std::complex<double>(bx, by);
  }
  return m;
}

ThreeBoxReport three_box_demo() {
  using Eigen::Vector3cd;
  const std::complex<double> zeta = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  Vector3cd pre, post;
  pre << inv_sqrt3, inv_sqrt3, inv_sqrt3;
  post << inv_sqrt3, inv_sqrt3 * zeta, inv_sqrt3 * zeta * zeta;

  ThreeBoxReport rep;
  rep.overlap_abs = std::abs(post.dot(pre));  // dot() conjugates its receiver
  for (int k = 0; k < 3; ++k) {
    // Joint amplitudes for (box outcome, successful post-selection): checking
    // box k projects onto |k> (found) or its complement (not found).
    const std::complex<double> found = std::conj(post(k)) * pre(k);
    const std::complex<double> not_found = post.dot(pre) - found;
    const double p_found = std::norm(found);
    const double p_not = std::norm(not_found);
    rep.box_prob[static_cast<std::size_t>(k)] = p_found / (p_found + p_not);
  }
  return rep;
}

}  // namespace qbox
