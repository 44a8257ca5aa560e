#include "mimwave/transform.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mimwave {

CoefficientVector analyze(const MeasureModel& mu, const StepFunction& f,
                          const std::vector<BasisElement>& basis) {
  CoefficientVector out;
  out.reserve(basis.size());
  for (const BasisElement& b : basis)
    out.push_back(CoefficientEntry{descriptor(b), inner_product(mu, f, b.fn)});
  return out;
}

StepFunction synthesize(const MeasureModel& mu, const CoefficientVector& coeffs,
                        const std::vector<BasisElement>& basis) {
  if (coeffs.size() != basis.size())
    throw input_error("synthesize: coefficient count does not match the basis");
  std::vector<std::pair<double, const StepFunction*>> parts;
  parts.reserve(coeffs.size());
  for (size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i].descriptor != descriptor(basis[i]))
      throw input_error("synthesize: coefficient order does not match the basis");
    parts.emplace_back(coeffs[i].value, &basis[i].fn);
  }
  return lin_comb(mu, parts);
}

double residual(const MeasureModel& mu, const StepFunction& f,
                const std::vector<BasisElement>& basis) {
  // Explicit subtraction: the coefficient algebra is exact, so span
  // membership cancels to the drop threshold instead of the sqrt(eps)
  // floor a Pythagorean shortcut would leave.
  return norm(mu, subtract(mu, f, synthesize(mu, analyze(mu, f, basis), basis)));
}

GramResult gram(const MeasureModel& mu, const std::vector<BasisElement>& basis) {
  GramResult res;
  const size_t n = basis.size();
  res.G.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      const double v = inner_product(mu, basis[i].fn, basis[j].fn);
      res.G[i][j] = v;
      res.G[j][i] = v;
      res.max_deviation =
          std::max(res.max_deviation, std::abs(v - (i == j ? 1.0 : 0.0)));
    }
  }
  return res;
}

std::vector<int> uncovered_translates(const StepFunction& f,
                                      const std::vector<BasisElement>& basis) {
  std::set<int> covered;
  for (const BasisElement& b : basis)
    for (int m : support_translates(b.fn)) covered.insert(m);
  std::vector<int> missing;
  for (int m : support_translates(f))
    if (!covered.count(m)) missing.push_back(m);
  return missing;
}

}  // namespace mimwave
