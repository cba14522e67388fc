#include "qbox/json_io.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace qbox {

namespace {

nlohmann::json triangular_to_json(const Triangular& t, int n_max) {
  nlohmann::json rows = nlohmann::json::array();
  for (int n = 0; n <= n_max; ++n) {
    nlohmann::json row = nlohmann::json::array();
    for (int s = 0; s <= n; ++s) row.push_back(t(n, s));
    rows.push_back(std::move(row));
  }
  return rows;
}

Triangular triangular_from_json(const nlohmann::json& rows,
                                const std::string& key) {
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument("moment key '" + key +
                                "' must be a non-empty array of rows");
  const int n_max = static_cast<int>(rows.size()) - 1;
  Triangular t(n_max);
  for (int n = 0; n <= n_max; ++n) {
    const nlohmann::json& row = rows[static_cast<std::size_t>(n)];
    if (!row.is_array() || static_cast<int>(row.size()) != n + 1)
      throw std::invalid_argument("row " + std::to_string(n) + " of '" + key +
                                  "' must have " + std::to_string(n + 1) +
                                  " entries");
    for (int s = 0; s <= n; ++s)
      t(n, s) = row[static_cast<std::size_t>(s)].get<double>();
  }
  return t;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out.push_back({m(i, j).real(), m(i, j).imag()});
  return out;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, int dim,
                                  const std::string& key) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim * dim)
    throw std::invalid_argument("matrix '" + key + "' must list " +
                                std::to_string(dim * dim) +
                                " [re, im] pairs row-major");
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      const nlohmann::json& cell = j[static_cast<std::size_t>(i * dim + k)];
      if (!cell.is_array() || cell.size() != 2)
        throw std::invalid_argument("matrix '" + key +
                                    "' entries must be [re, im] pairs");
      m(i, k) = std::complex<double>(cell[0].get<double>(),
                                     cell[1].get<double>());
    }
  return m;
}

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument(std::string("missing key '") + key + "'");
  return *it;
}

}  // namespace

nlohmann::json table_to_json(const ProbabilityTable& t) {
  nlohmann::json j;
  j["depth"] = t.depth;
  j["P_a"] = t.p_a;
  j["P_b"] = t.p_b;
  return j;
}

ProbabilityTable table_from_json(const nlohmann::json& j) {
  ProbabilityTable t;
  t.depth = require(j, "depth").get<int>();
  if (t.depth < 1) throw std::invalid_argument("depth must be >= 1");
  const auto read_side = [&j](const char* key,
                              std::map<std::string, double>* side) {
    const nlohmann::json& obj = require(j, key);
    if (!obj.is_object())
      throw std::invalid_argument(std::string(key) +
                                  " must map outcome strings to numbers");
    for (const auto& [r, v] : obj.items()) (*side)[r] = v.get<double>();
  };
  read_side("P_a", &t.p_a);
  read_side("P_b", &t.p_b);
  return t;
}

nlohmann::json model_to_json(const FiniteDimModel& m) {
  nlohmann::json j;
  j["dim"] = m.dim;
  j["A"] = matrix_to_json(m.A);
  j["B"] = matrix_to_json(m.B);
  j["rho0"] = matrix_to_json(m.rho0);
  return j;
}

FiniteDimModel model_from_json(const nlohmann::json& j) {
  FiniteDimModel m;
  m.dim = require(j, "dim").get<int>();
  if (m.dim < 1 || m.dim > kMaxModelDim)
    throw std::invalid_argument("dim must be between 1 and " +
                                std::to_string(kMaxModelDim));
  m.A = matrix_from_json(require(j, "A"), m.dim, "A");
  m.B = matrix_from_json(require(j, "B"), m.dim, "B");
  m.rho0 = matrix_from_json(require(j, "rho0"), m.dim, "rho0");
  return m;
}

nlohmann::json atomic_to_json(const AtomicState& st) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& a : st.atoms)
    atoms.push_back({{"w", a.w},
                     {"t", a.t},
                     {"bloch", {a.bloch[0], a.bloch[1], a.bloch[2]}}});
  return nlohmann::json{{"atoms", std::move(atoms)}};
}

AtomicState atomic_from_json(const nlohmann::json& j) {
  const nlohmann::json& atoms = require(j, "atoms");
  if (!atoms.is_array() || atoms.empty())
    throw std::invalid_argument("'atoms' must be a non-empty array");
  AtomicState st;
  for (const nlohmann::json& aj : atoms) {
    Atom a;
    a.w = require(aj, "w").get<double>();
    a.t = require(aj, "t").get<double>();
    const nlohmann::json& b = require(aj, "bloch");
    if (!b.is_array() || b.size() != 3)
      throw std::invalid_argument("'bloch' must be [bx, by, bz]");
    a.bloch = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
    st.atoms.push_back(a);
  }
  return st;
}

nlohmann::json int_moments_to_json(const IntMomentTable& m) {
  nlohmann::json j;
  j["M1"] = triangular_to_json(m.m1, m.n_max);
  j["Mx"] = triangular_to_json(m.mx, m.n_max);
  j["Mz"] = triangular_to_json(m.mz, m.n_max);
  return j;
}

IntMomentTable int_moments_from_json(const nlohmann::json& j) {
  IntMomentTable m;
  m.m1 = triangular_from_json(require(j, "M1"), "M1");
  m.mx = triangular_from_json(require(j, "Mx"), "Mx");
  m.mz = triangular_from_json(require(j, "Mz"), "Mz");
  m.n_max = m.m1.n_max();
  if (m.mx.n_max() != m.n_max || m.mz.n_max() != m.n_max)
    throw std::invalid_argument("M1, Mx, Mz must have the same depth");
  return m;
}

nlohmann::json half_moments_to_json(const HalfMomentTable& m) {
  nlohmann::json j;
  j["M1p"] = triangular_to_json(m.m1p, m.n_max);
  j["Mxp"] = triangular_to_json(m.mxp, m.n_max);
  j["Mzp"] = triangular_to_json(m.mzp, m.n_max);
  return j;
}

HalfMomentTable half_moments_from_json(const nlohmann::json& j) {
  HalfMomentTable m;
  m.m1p = triangular_from_json(require(j, "M1p"), "M1p");
  m.mxp = triangular_from_json(require(j, "Mxp"), "Mxp");
  m.mzp = triangular_from_json(require(j, "Mzp"), "Mzp");
  m.n_max = m.m1p.n_max();
  if (m.mxp.n_max() != m.n_max || m.mzp.n_max() != m.n_max)
    throw std::invalid_argument("M1p, Mxp, Mzp must have the same depth");
  return m;
}

nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const CheckWitness& w : v.witnesses)
    witnesses.push_back({{"check", w.check},
                         {"n", w.n},
                         {"s", w.s},
                         {"measured", w.measured},
                         {"bound", w.bound},
                         {"margin", w.margin},
                         {"undecided", w.undecided},
                         {"detail", w.detail}});
  return nlohmann::json{{"status", to_string(v.status)},
                        {"depth", v.depth_used},
                        {"K", v.k_used},
                        {"tol", v.tol},
                        {"witnesses", std::move(witnesses)}};
}

nlohmann::json load_json(const std::string& path) {
  if (path == "-") return nlohmann::json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

void save_json(const nlohmann::json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace qbox
