#pragma once

#include <functional>
#include <optional>

#include "mimwave/stepfunc.hpp"

namespace mimwave {

// Contractive affine inverse branches tau_i(y) = a_i * y + b_i together
// with the base intervals B_i = [lo_i, hi_i) inside [0, 1].
struct AffineBranch {
  double a = 0.0;
  double b = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct AffineBranchGeometry {
  std::vector<AffineBranch> branches;

  AffineBranchGeometry() = default;
  // Validates against A within 1e-9:
  //  - each a_i in (0, 1), lo_i < hi_i, intervals inside [0, 1] with
  //    pairwise disjoint interiors;
  //  - the expanded interval F(B_i) = tau_i^{-1}(B_i) equals the hull of
  //    the successors' intervals {B_j : A_ij == 1};
  //  - A_ij == 1 implies B_j inside F(B_i), A_ij == 0 implies B_j misses
  //    the interior of F(B_i).
  AffineBranchGeometry(const IncidenceMatrix& A, std::vector<AffineBranch> branches_);

  int N() const { return static_cast<int>(branches.size()); }
};

struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x < hi; }
};

// Geometric carrier of an atom: the branch composition
// tau_{w0} o ... o tau_{w_{n-2}} applied to B_{w_{n-1}}, shifted by the
// translate. Throws input_error on empty words.
RealInterval cylinder_interval(const AffineBranchGeometry& geom, const Atom& atom);

// Full system description: measure model plus optional geometry.
struct SystemSpec {
  MeasureModel mu;
  std::optional<AffineBranchGeometry> geom;
};

using ScalingResult = TermList;

// Action of the scale-n operator on a single unit indicator 1_{[w] + m}.
//
// n > 0 refines: each atom maps to a combination of atoms with words
// n letters longer, translates folded via m = c(u) + N^n * k.
// n < 0 coarsens: words shrink by n letters (or the atom dies / picks up
// a junction factor when the word is too short).
// n = 0 is the identity. Coefficients carry the measure normalization
// that keeps the operator isometric on its range.
ScalingResult apply_scaling(const MeasureModel& mu, int n, const Atom& atom);

// Linear extension of apply_scaling to canonical step functions.
StepFunction apply_scaling_fn(const MeasureModel& mu, int n, const StepFunction& f);

// n-fold application of the one-step operator (n > 0 refining steps,
// n < 0 coarsening steps, executed one at a time).
StepFunction scaling_power(const MeasureModel& mu, int n, const StepFunction& f);

// Comparison of the closed-form scale-n action against n iterated
// one-step actions on the given atoms. Agreement within 1e-12 is the
// signature of a stationary first-order measure.
struct PowerEquivalenceEntry {
  Atom atom;
  double discrepancy = 0.0;  // L2 distance between the two routes
};

struct PowerEquivalenceReport {
  double max_discrepancy = 0.0;
  std::vector<PowerEquivalenceEntry> entries;
};

PowerEquivalenceReport power_equivalence(const MeasureModel& mu, int n,
                                         const std::vector<Atom>& atoms);

// Pointwise scale-n action (n >= 1) for functions given as a callable on
// the real line, evaluated at x: locates the unique translated cylinder of
// a depth-(n+1) word containing x and applies the measure-weighted affine
// substitution. Returns 0 off the refined cover. Throws config_error
// when the system has no geometry.
double pointwise_scaling(const SystemSpec& sys, int n,
                         const std::function<double(double)>& f, double x);

}  // namespace mimwave
