#pragma once

/*
 * Core data model for iterated dichotomic measurement statistics.
 *
 * A ProbabilityTable stores, for both interleavings ("a first" and "b first"),
 * the probability P_i(r) of observing the outcome string r = r1 r2 ... rL
 * when the two measurements are applied in strict alternation starting with
 * measurement i.  Strings are binary text keys, most significant first: the
 * first character is the outcome of the first measurement.
 *
 * A table is admissible when every entry is a probability and discarding the
 * last outcome marginalises correctly:
 *
 *   P_i(r) = P_i(r,0) + P_i(r,1)       and       P_i(0) + P_i(1) = 1.
 *
 * Statistics produced by any quantum model depend on r only through its
 * length, its first outcome r1, and the number s of switches (indices j with
 * r_j != r_{j+1}).  Grouping an admissible table by (i, r1, n, s), where
 * n = |r| - 1, yields the F-tables
 *
 *   F_{i,r1}(n, s),   F_{i,+} = F_{i,1} + F_{i,0},   F_{i,-} = F_{i,1} - F_{i,0},
 *
 * and the two derived half-moment sequences
 *
 *   C1 = (F_{a,-} + F_{b,-}) / 2,      C2 = (F_{a,-} - F_{b,-}) / 2,
 *
 * which drive all realizability checks downstream.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbox/triangular.hpp"

namespace qbox {

// Thrown when a table is structurally broken (bad keys, missing entries).
class TableStructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of switches in a binary outcome string: |{j : r_j != r_{j+1}}|.
// Throws std::invalid_argument on an empty or non-binary string.
int switch_count(const std::string& r);

// All binary strings of the given length, lexicographically ordered.
std::vector<std::string> all_outcome_strings(int length);

struct ProbabilityTable {
  int depth = 0;  // maximal string length L >= 1
  std::map<std::string, double> p_a;  // keys: all strings of length 1..depth
  std::map<std::string, double> p_b;

  const std::map<std::string, double>& side(char process) const;
  double at(char process, const std::string& r) const;
};

// Keys of length 1..depth absent from either side (prefixed "a:" / "b:").
std::vector<std::string> missing_keys(const ProbabilityTable& t);

struct AdmissibilityReport {
  bool ok = false;
  double worst_residual = 0.0;  // largest marginalisation/normalisation gap
  char process = 'a';
  std::string witness;  // parent string of the worst gap; "" = root sum
};

// Checks entries in [0,1] and the marginalisation identities to within tol.
// Throws TableStructureError when keys are missing or malformed.
AdmissibilityReport validate_admissible(const ProbabilityTable& t, double tol);

// Deterministically generates an admissible table by recursive splitting:
// each parent mass is divided between its two extensions by an independent
// uniform draw.  Identical (depth, seed) pairs give identical tables.
ProbabilityTable random_admissible(int depth, std::uint64_t seed);

// Grouped frequency tables; index [process][r1] with process a=0, b=1.
struct FTable {
  int n_max = -1;  // table depth minus one
  Triangular f[2][2];
  Triangular f_plus[2], f_minus[2];
  Triangular c1, c2;
  Triangular f_plus_avg;  // (F_{a,+} + F_{b,+}) / 2, used for tail bounds
  double max_spread = 0.0;  // worst within-group spread encountered
};

// Emitted when two strings in the same (process, r1, n, s) group disagree by
// more than the grouping tolerance.
struct SwitchWitness {
  char process = 'a';
  int r1 = 0, n = 0, s = 0;
  std::string lo_r, hi_r;
  double lo = 0.0, hi = 0.0;
  double spread = 0.0;
};

struct FBuildOutcome {
  std::optional<FTable> table;      // set when grouping succeeded
  std::optional<SwitchWitness> witness;  // set when it did not
};

// Groups an admissible table by (process, r1, n, s).  Group values are the
// arithmetic means; a group whose spread (max - min) exceeds tol aborts the
// build and reports the extremal strings instead.  Inadmissible input throws
// std::invalid_argument carrying the admissibility witness.
FBuildOutcome table_to_F(const ProbabilityTable& t, double tol);

}  // namespace qbox
