#pragma once

/*
 * Scans of truncated statistics over the state space.
 *
 * A coordinate names one table entry, e.g. "a:01" = the probability of the
 * outcome string 01 under the interleaving that starts with measurement a.
 * A scan evaluates a fixed list of coordinates on many states - a
 * deterministic parameter grid of pure states or a seeded random ensemble of
 * mixtures - producing a point cloud whose shape shows which truncated
 * statistics are reachable.  Rows are computed independently per sample with
 * per-sample seeding, so results do not depend on the worker thread count
 * (QBOX_THREADS, default: hardware concurrency).
 */

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "qbox/qmodel.hpp"

namespace qbox {

struct Coordinate {
  char process = 'a';
  std::string r;
};

// Parses "a:01" / "b:10"; throws std::invalid_argument on anything else.
Coordinate parse_coordinate(const std::string& text);
std::string coordinate_name(const Coordinate& c);

// Pure state on the sphere: bloch = (sin 2theta cos lambda,
// sin 2theta sin lambda, cos 2theta) prepared alongside parameter t0.
AtomicState pure_state(double t0, double theta, double lambda);

// Random mixture: flat-Dirichlet weights, uniform t per atom, bloch vector
// uniform in the closed unit ball.
AtomicState random_mixture(std::mt19937_64& rng, int atoms);

struct SamplerSpec {
  std::vector<Coordinate> coords;

  // Grid mode (used when every count is positive): pure states on a
  // t0 x theta x lambda grid over [0,1] x [0,pi] x [0,pi].
  std::array<int, 3> grid = {0, 0, 0};

  // Random mode: `count` mixtures of `mixture_atoms` atoms each.
  std::uint64_t seed = 0;
  int count = 0;
  int mixture_atoms = 1;
};

struct PointCloud {
  std::vector<std::string> names;             // one per coordinate
  std::vector<std::vector<double>> rows;      // one per sampled state
};

PointCloud scan(const SamplerSpec& spec);

// Convex hull (monotone chain, counter-clockwise, collinear points dropped)
// of the cloud projected onto coordinate columns cx and cy.
std::vector<std::array<double, 2>> hull2d(const PointCloud& cloud, int cx,
                                          int cy);

// CSV: header of coordinate names, then one row per state, every value
// printed with %.17g so a round trip through text is exact.
void emit_csv(const PointCloud& cloud, std::ostream& os);

// 800x800 SVG of the first two columns on unit-square axes; optionally
// overlays the convex hull.
void emit_svg(const PointCloud& cloud, std::ostream& os, bool with_hull);

}  // namespace qbox
