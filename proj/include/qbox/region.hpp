#pragma once

/*
 * The admissible anchor region.
 *
 * A point (x0, y0, x1, y1) encodes the rectangle [x0, x1] x [y0, y1] of
 * candidate anchor moments; it is admissible exactly when the rectangle is
 * non-empty and meets the closed unit disc.  Two equivalent predicates are
 * provided:
 *
 *   - in_region_clauses: a flat conjunction of five clauses, one per corner
 *     obstruction, usable directly as a certificate (each clause names the
 *     corner it constrains);
 *
 *   - in_region_clamp: the geometric test dist((0,0), rectangle) <= 1 via
 *     coordinate clamping.
 *
 * Both accept a signed tolerance: tol > 0 relaxes membership (boundary points
 * pass), tol < 0 demands strict interiority.  Linear comparisons are relaxed
 * by tol and quadratic ones by tol as well, so the two predicates remain
 * equivalent at tol = 0 under exact arithmetic.
 */

#include <array>
#include <optional>

namespace qbox {

struct RegionPoint {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

bool in_region_clauses(const RegionPoint& p, double tol);
bool in_region_clamp(const RegionPoint& p, double tol);

// Index (1..5) of the first failing clause of in_region_clauses, or 0 when
// the point is a member.  Clause 1 is rectangle non-emptiness; clauses 2..5
// constrain the corners (x0,y0), (x1,y0), (x1,y1), (x0,y1) in that order.
int first_failing_clause(const RegionPoint& p, double tol);

// Point of the rectangle nearest the origin; the canonical realizing anchor
// when the point is a member.  Empty when p is not in the region (tol = 0).
std::optional<std::array<double, 2>> anchor_point(const RegionPoint& p);

}  // namespace qbox
