#pragma once

/*
 * The universal general-probabilistic model of an admissible table.
 *
 * Any admissible probability table, realizable or not, is reproduced by a
 * canonical operational model.  Its events are four generators
 *
 *   va, va~ (the two outcomes of measurement a),
 *   vb, vb~ (the two outcomes of measurement b),
 *
 * subject only to the relations that make each pair a perfect test:
 *
 *   x x = x  (repeating a measurement repeats its outcome),
 *   x x~ = 0 (the two outcomes of one measurement exclude each other),
 *
 * with no relation between the families.  Products therefore reduce to a
 * unit, a zero, or a word whose letters strictly alternate between the two
 * families; such a word is exactly an outcome string for one of the two
 * interleavings, and the canonical state assigns it the recorded table
 * probability.  Updating the state by an observed event multiplies every
 * queried word by that event on the left of the query (i.e. the event is
 * appended to the history), which reproduces the table's conditional
 * structure without any quantum assumption.
 */

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qbox/seqcore.hpp"

namespace qbox {

enum class Letter { kA, kABar, kB, kBBar };

// Both letters of one measurement belong to one family.
bool same_family(Letter x, Letter y);
bool barred(Letter l);
char family_char(Letter l);   // 'a' or 'b'
char outcome_char(Letter l);  // '1' for the plain letter, '0' for the barred

// A reduced product of generators: the unit (empty product), the zero, or a
// strictly family-alternating sequence of letters.  Multiplication
// concatenates and reduces; reduction is confluent, so the representation is
// a normal form and equality is structural.
class Word {
 public:
  Word() = default;  // unit

  static Word unit();
  static Word zero();
  static Word letter(Letter l);

  bool is_unit() const { return !zero_ && letters_.empty(); }
  bool is_zero() const { return zero_; }
  const std::vector<Letter>& letters() const { return letters_; }

  friend Word operator*(const Word& lhs, const Word& rhs);
  bool operator==(const Word&) const = default;

 private:
  bool zero_ = false;
  std::vector<Letter> letters_;
};

// The alternating word observing outcome string r under the interleaving
// that starts with the given process ('a' or 'b').
Word word_from_outcomes(char process, const std::string& r);

// A state of the model: the table it was built from plus the history of
// observed events.  The value on a word w is the table probability of the
// reduced word history * w; it is empty when that word is deeper than the
// recorded data.
struct GpFunctional {
  std::shared_ptr<const ProbabilityTable> table;
  Word history;

  std::optional<double> value(const Word& w) const;
};

// Canonical state of an admissible table (history = unit).  Throws
// std::invalid_argument when the table is not admissible within tol.
GpFunctional gp_from_table(const ProbabilityTable& t, double tol);

// State update by an observed event: the new history is history * g.
GpFunctional gp_apply(Letter g, const GpFunctional& f);

struct GpCheckResult {
  std::string name;
  double max_residual = 0.0;
  bool ok = false;
};

struct GpReport {
  std::vector<GpCheckResult> checks;
  int words_checked = 0;
  bool ok = false;
};

// Verifies the model axioms on every alternating word up to the given depth
// (capped by the table depth): normalization of the two root tests,
// positivity of all word values, conservation under refining any history by
// either measurement, reproduction of the table through repeated gp_apply,
// and the algebraic idempotence / annihilation laws acting on histories.
GpReport gp_verify(const GpFunctional& base, int depth, double tol);

}  // namespace qbox
