#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mimwave/measure.hpp"

namespace mimwave {

struct AffineBranchGeometry;  // operators.hpp

// One cylinder copy inside the enlarged fractal: the set [word] + translate.
struct Atom {
  int translate = 0;
  Word word;

  auto operator<=>(const Atom&) const = default;
};

// Finite linear combination of indicators of translated cylinders,
// kept in canonical form: within each translate all words have equal
// length, atoms are sorted, coefficients with |c| <= 1e-14 are dropped.
struct StepFunction {
  std::map<Atom, double> terms;

  bool is_zero() const { return terms.empty(); }
};

using TermList = std::vector<std::pair<Atom, double>>;

// Canonicalizes an arbitrary term list: refines every atom of a translate
// to the maximal word length present there (splitting indicators along
// admissible extensions), merges duplicates, drops near-zero coefficients.
// Throws depth_error when refinement needs words deeper than mu provides,
// input_error on inadmissible words.
StepFunction normalize(const MeasureModel& mu, const TermList& raw);

// Indicator of a single atom, canonical.
StepFunction indicator(const MeasureModel& mu, const Atom& atom);

// Father wavelet: the unit-norm indicator nu[(i)]^(-1/2) * 1_{[(i)]}.
StepFunction father(const MeasureModel& mu, int i);

// L2 pairing. Two atoms overlap iff they share the translate and one word
// prefixes the other; the overlap then carries the longer word's weight.
double inner_product(const MeasureModel& mu, const StepFunction& f, const StepFunction& g);

double norm(const MeasureModel& mu, const StepFunction& f);

// Linear combination sum_i parts[i].first * parts[i].second, canonical.
StepFunction lin_comb(const MeasureModel& mu,
                      const std::vector<std::pair<double, const StepFunction*>>& parts);
StepFunction add(const MeasureModel& mu, const StepFunction& f, const StepFunction& g);
StepFunction subtract(const MeasureModel& mu, const StepFunction& f, const StepFunction& g);
StepFunction scale(const StepFunction& f, double c);

// Translation operator (T^k f)(x) = f(x - k); canonical form is preserved.
StepFunction apply_T(const StepFunction& f, int k);

// Pointwise value at x: sum of coefficients of atoms whose geometric
// interval contains x. Intervals are half-open [lo, hi).
double evaluate(const MeasureModel& mu, const AffineBranchGeometry& geom,
                const StepFunction& f, double x);

// Distinct translates carrying support.
std::vector<int> support_translates(const StepFunction& f);

}  // namespace mimwave
