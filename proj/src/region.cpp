#include "qbox/region.hpp"

#include <algorithm>

namespace qbox {

namespace {

// Corner clause: the rectangle corner (cx, cy) must not obstruct the disc.
// Signs sx, sy in {+1, -1} orient the comparisons so that the same template
// covers all four corners; sx = +1 constrains cx from above (cx <= 1 or
// cx <= 0), sx = -1 from below.
bool corner_ok(double cx, double cy, int sx, int sy, double tol) {
  const bool linear_a = sx * cx <= 1.0 + tol && sy * cy <= 0.0 + tol;
  const bool linear_b = sx * cx <= 0.0 + tol && sy * cy <= 1.0 + tol;
  const bool disc = cx * cx + cy * cy <= 1.0 + tol;
  return linear_a || linear_b || disc;
}

}  // namespace

int first_failing_clause(const RegionPoint& p, double tol) {
  if (!(p.x0 <= p.x1 + tol && p.y0 <= p.y1 + tol)) return 1;
  if (!corner_ok(p.x0, p.y0, +1, +1, tol)) return 2;
  if (!corner_ok(p.x1, p.y0, -1, +1, tol)) return 3;
  if (!corner_ok(p.x1, p.y1, -1, -1, tol)) return 4;
  if (!corner_ok(p.x0, p.y1, +1, -1, tol)) return 5;
  return 0;
}

bool in_region_clauses(const RegionPoint& p, double tol) {
  return first_failing_clause(p, tol) == 0;
}

bool in_region_clamp(const RegionPoint& p, double tol) {
  if (!(p.x0 <= p.x1 + tol && p.y0 <= p.y1 + tol)) return false;
  const double cx = std::clamp(0.0, std::min(p.x0, p.x1), std::max(p.x0, p.x1));
  const double cy = std::clamp(0.0, std::min(p.y0, p.y1), std::max(p.y0, p.y1));
  return cx * cx + cy * cy <= 1.0 + tol;
}

std::optional<std::array<double, 2>> anchor_point(const RegionPoint& p) {
  if (!in_region_clamp(p, 0.0)) return std::nullopt;
  return std::array<double, 2>{std::clamp(0.0, p.x0, p.x1),
                               std::clamp(0.0, p.y0, p.y1)};
}

}  // namespace qbox
