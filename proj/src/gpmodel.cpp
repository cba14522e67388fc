#include "qbox/gpmodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbox {

bool same_family(Letter x, Letter y) {
  return (x == Letter::kA || x == Letter::kABar) ==
         (y == Letter::kA || y == Letter::kABar);
}

bool barred(Letter l) { return l == Letter::kABar || l == Letter::kBBar; }

char family_char(Letter l) {
  return (l == Letter::kA || l == Letter::kABar) ? 'a' : 'b';
}

char outcome_char(Letter l) { return barred(l) ? '0' : '1'; }

Word Word::unit() { return Word{}; }

Word Word::zero() {
  Word w;
  w.zero_ = true;
  return w;
}

Word Word::letter(Letter l) {
  Word w;
  w.letters_.push_back(l);
  return w;
}

Word operator*(const Word& lhs, const Word& rhs) {
  if (lhs.zero_ || rhs.zero_) return Word::zero();
  Word out = lhs;
  // Within one family the letters form orthogonal idempotents, so a single
  // left-to-right pass reaches the normal form: merging equal neighbours
  // never creates a new same-family adjacency, and an unequal same-family
  // pair kills the whole product.
  for (Letter l : rhs.letters_) {
    if (!out.letters_.empty() && same_family(out.letters_.back(), l)) {
      if (out.letters_.back() == l) continue;
      return Word::zero();
    }
    out.letters_.push_back(l);
  }
  return out;
}

Word word_from_outcomes(char process, const std::string& r) {
  if (process != 'a' && process != 'b')
    throw std::invalid_argument("process must be 'a' or 'b'");
  Word w;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] != '0' && r[j] != '1')
      throw std::invalid_argument("outcome string must be binary: '" + r + "'");
    const bool a_family = (process == 'a') == (j % 2 == 0);
    const bool bar = r[j] == '0';
    const Letter l = a_family ? (bar ? Letter::kABar : Letter::kA)
                              : (bar ? Letter::kBBar : Letter::kB);
    w = w * Word::letter(l);
  }
  return w;
}

std::optional<double> GpFunctional::value(const Word& w) const {
  if (!table) throw std::logic_error("functional has no table");
  const Word full = history * w;
  if (full.is_zero()) return 0.0;
  if (full.is_unit()) return 1.0;
  if (static_cast<int>(full.letters().size()) > table->depth)
    return std::nullopt;
  std::string r;
  r.reserve(full.letters().size());
  for (Letter l : full.letters()) r.push_back(outcome_char(l));
  return table->at(family_char(full.letters().front()), r);
}

GpFunctional gp_from_table(const ProbabilityTable& t, double tol) {
  const AdmissibilityReport rep = validate_admissible(t, tol);
  if (!rep.ok)
    throw std::invalid_argument(
        "table is not admissible: residual " +
        std::to_string(rep.worst_residual) + " at " +
        std::string(1, rep.process) + ":" +
        (rep.witness.empty() ? std::string("<root>") : rep.witness));
  GpFunctional f;
  f.table = std::make_shared<ProbabilityTable>(t);
  f.history = Word::unit();
  return f;
}

GpFunctional gp_apply(Letter g, const GpFunctional& f) {
  GpFunctional out = f;
  out.history = f.history * Word::letter(g);
  return out;
}

namespace {

// All strictly alternating words of the given length, tagged with the
// process of their first letter and their outcome string.
struct TaggedWord {
  char process;
  std::string r;
  Word word;
};

std::vector<TaggedWord> alternating_words(int length) {
  std::vector<TaggedWord> out;
  for (char process : {'a', 'b'})
    for (const std::string& r : all_outcome_strings(length))
      out.push_back({process, r, word_from_outcomes(process, r)});
  return out;
}

}  // namespace

GpReport gp_verify(const GpFunctional& base, int depth, double tol) {
  if (!base.table) throw std::logic_error("functional has no table");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  depth = std::min(depth, base.table->depth);

  GpReport rep;
  GpCheckResult normalization{"normalization", 0.0, false};
  GpCheckResult positivity{"positivity", 0.0, false};
  GpCheckResult conservation{"conservation", 0.0, false};
  GpCheckResult reproduction{"reproduction", 0.0, false};
  GpCheckResult idempotence{"idempotence", 0.0, false};
  GpCheckResult annihilation{"annihilation", 0.0, false};
  const auto record = [](GpCheckResult& c, double r) {
    c.max_residual = std::max(c.max_residual, r);
  };

  // Root tests are normalized.
  for (char process : {'a', 'b'}) {
    const Word yes = word_from_outcomes(process, "1");
    const Word no = word_from_outcomes(process, "0");
    record(normalization,
           std::abs(*base.value(yes) + *base.value(no) - 1.0));
  }

  constexpr Letter kLetters[] = {Letter::kA, Letter::kABar, Letter::kB,
                                 Letter::kBBar};
  for (int length = 1; length <= depth; ++length) {
    for (const TaggedWord& tw : alternating_words(length)) {
      ++rep.words_checked;

      const double v = *base.value(tw.word);
      record(positivity, std::max(-v, 0.0));

      // Refining the history by either full measurement conserves mass.
      // Same-family refinements reduce algebraically; cross-family ones
      // need one more level of data.
      for (char m : {'a', 'b'}) {
        const Word yes = tw.word * word_from_outcomes(m, "1");
        const Word no = tw.word * word_from_outcomes(m, "0");
        const auto vy = base.value(yes), vn = base.value(no);
        if (vy && vn) record(conservation, std::abs(*vy + *vn - v));
      }

      // Applying the events of the word one by one reproduces the table.
      GpFunctional f = base;
      for (Letter l : tw.word.letters()) f = gp_apply(l, f);
      record(reproduction, std::abs(*f.value(Word::unit()) - v));

      // Observing an event twice equals observing it once; observing the
      // opposite outcome right after annihilates the state.
      for (Letter g : kLetters) {
        const GpFunctional once = gp_apply(g, f);
        const GpFunctional twice = gp_apply(g, once);
        record(idempotence, once.history == twice.history ? 0.0 : 1.0);
        const Letter opposite =
            g == Letter::kA      ? Letter::kABar
            : g == Letter::kABar ? Letter::kA
            : g == Letter::kB    ? Letter::kBBar
                                 : Letter::kB;
        const GpFunctional killed = gp_apply(opposite, once);
        record(annihilation, killed.history.is_zero() ? 0.0 : 1.0);
      }
    }
  }

  for (GpCheckResult* c : {&normalization, &positivity, &conservation,
                           &reproduction, &idempotence, &annihilation}) {
    c->ok = c->max_residual <= tol;
    rep.checks.push_back(*c);
  }
  rep.ok = std::all_of(rep.checks.begin(), rep.checks.end(),
                       [](const GpCheckResult& c) { return c.ok; });
  return rep;
}

}  // namespace qbox
