#include "qbox/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qbox/rng.hpp"
#include "qbox/seqcore.hpp"

namespace qbox {

namespace {

int worker_count() {
  if (const char* env = std::getenv("QBOX_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, count) on a static partition of worker threads.
// Every index is processed independently, so the split cannot change results.
void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int lo = static_cast<int>(static_cast<long long>(count) * w / workers);
    const int hi =
        static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

// splitmix64: decorrelates per-sample seeds derived from seed + index.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double table_entry(const AtomicState& st, const Coordinate& c) {
  const int n = static_cast<int>(c.r.size()) - 1;
  const int s = switch_count(c.r);
  const AtomF f = atomic_f(st, n, s);
  const double f_minus = c.process == 'a' ? f.f_minus_a : f.f_minus_b;
  const double sign = c.r[0] == '1' ? 1.0 : -1.0;
  return (f.f_plus + sign * f_minus) / 2.0;
}

double grid_value(double lo, double hi, int i, int count) {
  if (count <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) /
                  static_cast<double>(count - 1);
}

}  // namespace

Coordinate parse_coordinate(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon != 1 || (text[0] != 'a' && text[0] != 'b') || text.size() < 3)
    throw std::invalid_argument("coordinate must look like a:01 or b:10, got '" +
                                text + "'");
  Coordinate c;
  c.process = text[0];
  c.r = text.substr(2);
  for (char ch : c.r)
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("coordinate outcome string must be binary: '" +
                                  text + "'");
  return c;
}

std::string coordinate_name(const Coordinate& c) {
  return std::string(1, c.process) + ":" + c.r;
}

AtomicState pure_state(double t0, double theta, double lambda) {
  Atom a;
  a.w = 1.0;
  a.t = t0;
  a.bloch = {std::sin(2.0 * theta) * std::cos(lambda),
             std::sin(2.0 * theta) * std::sin(lambda), std::cos(2.0 * theta)};
  return AtomicState{{a}};
}

AtomicState random_mixture(std::mt19937_64& rng, int atoms) {
  if (atoms < 1) throw std::invalid_argument("mixture needs at least one atom");
  AtomicState st;
  st.atoms.resize(static_cast<std::size_t>(atoms));
  double total = 0.0;
  for (Atom& a : st.atoms) {
    // Flat Dirichlet via normalized exponentials.
    a.w = -std::log(1.0 - uniform01(rng));
    total += a.w;
    a.t = uniform01(rng);
    // Uniform in the unit ball: uniform direction, radius ~ u^(1/3).
    const double z = 2.0 * uniform01(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    const double rad = std::cbrt(uniform01(rng));
    const double s = std::sqrt(std::max(1.0 - z * z, 0.0));
    a.bloch = {rad * s * std::cos(phi), rad * s * std::sin(phi), rad * z};
  }
  for (Atom& a : st.atoms) a.w /= total;
  return st;
}

PointCloud scan(const SamplerSpec& spec) {
  if (spec.coords.empty())
    throw std::invalid_argument("scan needs at least one coordinate");
  for (const Coordinate& c : spec.coords)
    if (c.r.empty()) throw std::invalid_argument("empty coordinate string");

  PointCloud cloud;
  for (const Coordinate& c : spec.coords)
    cloud.names.push_back(coordinate_name(c));

  const bool grid_mode =
      spec.grid[0] > 0 && spec.grid[1] > 0 && spec.grid[2] > 0;
  const int count =
      grid_mode ? spec.grid[0] * spec.grid[1] * spec.grid[2] : spec.count;
  if (count < 1) throw std::invalid_argument("scan needs a positive sample count");
  if (!grid_mode && spec.mixture_atoms < 1)
    throw std::invalid_argument("mixtures need at least one atom");

  cloud.rows.assign(static_cast<std::size_t>(count),
                    std::vector<double>(spec.coords.size(), 0.0));
  parallel_for(count, [&](int i) {
    AtomicState st;
    if (grid_mode) {
      const int it = i / (spec.grid[1] * spec.grid[2]);
      const int rest = i % (spec.grid[1] * spec.grid[2]);
      const int ith = rest / spec.grid[2];
      const int il = rest % spec.grid[2];
      st = pure_state(grid_value(0.0, 1.0, it, spec.grid[0]),
                      grid_value(0.0, std::numbers::pi, ith, spec.grid[1]),
                      grid_value(0.0, std::numbers::pi, il, spec.grid[2]));
    } else {
      std::mt19937_64 rng(splitmix64(spec.seed + static_cast<std::uint64_t>(i)));
      st = random_mixture(rng, spec.mixture_atoms);
    }
    for (std::size_t j = 0; j < spec.coords.size(); ++j)
      cloud.rows[static_cast<std::size_t>(i)][j] = table_entry(st, spec.coords[j]);
  });
  return cloud;
}

std::vector<std::array<double, 2>> hull2d(const PointCloud& cloud, int cx,
                                          int cy) {
  if (cx < 0 || cy < 0 || cx >= static_cast<int>(cloud.names.size()) ||
      cy >= static_cast<int>(cloud.names.size()))
    throw std::invalid_argument("hull columns out of range");
  std::vector<std::array<double, 2>> pts;
  pts.reserve(cloud.rows.size());
  for (const std::vector<double>& row : cloud.rows)
    pts.push_back({row[static_cast<std::size_t>(cx)],
                   row[static_cast<std::size_t>(cy)]});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  const auto cross = [](const std::array<double, 2>& o,
                        const std::array<double, 2>& a,
                        const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::array<double, 2>> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) {  // upper chain
    while (k >= lo && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  return hull;
}

void emit_csv(const PointCloud& cloud, std::ostream& os) {
  for (std::size_t j = 0; j < cloud.names.size(); ++j)
    os << (j ? "," : "") << cloud.names[j];
  os << "\n";
  char buf[32];
  for (const std::vector<double>& row : cloud.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", row[j]);
      os << (j ? "," : "") << buf;
    }
    os << "\n";
  }
}

void emit_svg(const PointCloud& cloud, std::ostream& os, bool with_hull) {
  if (cloud.names.size() < 2)
    throw std::invalid_argument("SVG plot needs at least two coordinates");
  constexpr double kSize = 800.0, kLo = 60.0, kHi = 760.0;
  const auto px = [](double v) { return kLo + (kHi - kLo) * v; };
  const auto py = [](double v) { return kHi - (kHi - kLo) * v; };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
     << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize
     << "\">\n";
  os << "  <rect x=\"" << kLo << "\" y=\"" << py(1.0) << "\" width=\""
     << kHi - kLo << "\" height=\"" << kHi - kLo
     << "\" fill=\"none\" stroke=\"#888\"/>\n";
  os << "  <text x=\"" << (kLo + kHi) / 2 << "\" y=\"" << kHi + 30
     << "\" text-anchor=\"middle\" font-size=\"16\">" << cloud.names[0]
     << "</text>\n";
  os << "  <text x=\"" << kLo - 30 << "\" y=\"" << (kLo + kHi) / 2
     << "\" text-anchor=\"middle\" font-size=\"16\" transform=\"rotate(-90 "
     << kLo - 30 << " " << (kLo + kHi) / 2 << ")\">" << cloud.names[1]
     << "</text>\n";
  if (with_hull) {
    const std::vector<std::array<double, 2>> hull = hull2d(cloud, 0, 1);
    if (hull.size() >= 2) {
      os << "  <polygon points=\"";
      for (std::size_t i = 0; i < hull.size(); ++i)
        os << (i ? " " : "") << px(hull[i][0]) << "," << py(hull[i][1]);
      os << "\" fill=\"none\" stroke=\"#c33\" stroke-width=\"1.5\"/>\n";
    }
  }
  for (const std::vector<double>& row : cloud.rows)
    os << "  <circle cx=\"" << px(row[0]) << "\" cy=\"" << py(row[1])
       << "\" r=\"2\" fill=\"#36c\" fill-opacity=\"0.5\"/>\n";
  os << "</svg>\n";
}

}  // namespace qbox
