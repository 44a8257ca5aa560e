#pragma once

#include "mimwave/wavelets.hpp"

namespace mimwave {

struct CoefficientEntry {
  std::string descriptor;
  double value = 0.0;
};

using CoefficientVector = std::vector<CoefficientEntry>;

// Inner products of f against each basis element, in basis order.
CoefficientVector analyze(const MeasureModel& mu, const StepFunction& f,
                          const std::vector<BasisElement>& basis);

// Linear combination sum_i coeffs[i] * basis[i]. Throws input_error when
// sizes or descriptors disagree with the basis.
StepFunction synthesize(const MeasureModel& mu, const CoefficientVector& coeffs,
                        const std::vector<BasisElement>& basis);

// || f - synthesize(analyze(f)) ||. For an orthonormal basis this is the
// distance to span(basis); families that are not orthonormal get the
// literal formula (see gram to detect them).
double residual(const MeasureModel& mu, const StepFunction& f,
                const std::vector<BasisElement>& basis);

struct GramResult {
  std::vector<std::vector<double>> G;
  double max_deviation = 0.0;  // max |G - I| entrywise
};

GramResult gram(const MeasureModel& mu, const std::vector<BasisElement>& basis);

// Support translates of f not covered by any basis element; nonempty
// means the basis provably misses part of f.
std::vector<int> uncovered_translates(const StepFunction& f,
                                      const std::vector<BasisElement>& basis);

}  // namespace mimwave
