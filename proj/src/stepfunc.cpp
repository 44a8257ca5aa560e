#include "mimwave/stepfunc.hpp"

#include <algorithm>
#include <cmath>

#include "mimwave/operators.hpp"

namespace mimwave {

namespace {

constexpr double kZeroTol = 1e-14;

void expand_to_length(const IncidenceMatrix& A, const Word& w, int target,
                      std::vector<Word>& out) {
  if (w.length() == target) {
    out.push_back(w);
    return;
  }
  for (int j = 0; j < A.N; ++j)
    if (w.empty() || A.at(w.back(), j)) expand_to_length(A, w.append(j), target, out);
}

}  // namespace

StepFunction normalize(const MeasureModel& mu, const TermList& raw) {
  std::map<int, int> target_len;
  for (const auto& [atom, c] : raw) {
    if (!std::isfinite(c)) throw input_error("step function: non-finite coefficient");
    if (!is_admissible(mu.A, atom.word))
      throw input_error("step function: inadmissible word in term list");
    int& len = target_len[atom.translate];
    len = std::max({len, atom.word.length(), 1});
  }
  for (const auto& [m, len] : target_len) {
    (void)m;
    if (len > mu.max_depth())
      throw depth_error("step function: refinement needs words deeper than the measure");
  }

  StepFunction f;
  std::vector<Word> refined;
  for (const auto& [atom, c] : raw) {
    refined.clear();
    expand_to_length(mu.A, atom.word, target_len[atom.translate], refined);
    for (const Word& w : refined) f.terms[Atom{atom.translate, w}] += c;
  }
  for (auto it = f.terms.begin(); it != f.terms.end();) {
    if (std::abs(it->second) < kZeroTol)
      it = f.terms.erase(it);
    else
      ++it;
  }
  return f;
}

StepFunction indicator(const MeasureModel& mu, const Atom& atom) {
  return normalize(mu, {{atom, 1.0}});
}

StepFunction father(const MeasureModel& mu, int i) {
  if (i < 0 || i >= mu.A.N) throw input_error("father: symbol out of range");
  const Word w({i});
  return normalize(mu, {{Atom{0, w}, 1.0 / std::sqrt(mu.value(w))}});
}

double inner_product(const MeasureModel& mu, const StepFunction& f, const StepFunction& g) {
  double acc = 0.0;
  auto fi = f.terms.begin();
  while (fi != f.terms.end()) {
    const int m = fi->first.translate;
    auto fe = f.terms.lower_bound(Atom{m + 1, Word{}});
    auto gi = g.terms.lower_bound(Atom{m, Word{}});
    auto ge = g.terms.lower_bound(Atom{m + 1, Word{}});
    for (; gi != ge; ++gi) {
      for (auto fj = fi; fj != fe; ++fj) {
        const Word& a = fj->first.word;
        const Word& b = gi->first.word;
        if (a.is_prefix_of(b))
          acc += fj->second * gi->second * mu.value(b);
        else if (b.is_prefix_of(a))
          acc += fj->second * gi->second * mu.value(a);
      }
    }
    fi = fe;
  }
  return acc;
}

double norm(const MeasureModel& mu, const StepFunction& f) {
  return std::sqrt(std::max(0.0, inner_product(mu, f, f)));
}

StepFunction lin_comb(const MeasureModel& mu,
                      const std::vector<std::pair<double, const StepFunction*>>& parts) {
  TermList raw;
  for (const auto& [c, fn] : parts)
    for (const auto& [atom, v] : fn->terms) raw.emplace_back(atom, c * v);
  return normalize(mu, raw);
}

StepFunction add(const MeasureModel& mu, const StepFunction& f, const StepFunction& g) {
  return lin_comb(mu, {{1.0, &f}, {1.0, &g}});
}

StepFunction subtract(const MeasureModel& mu, const StepFunction& f, const StepFunction& g) {
  return lin_comb(mu, {{1.0, &f}, {-1.0, &g}});
}

StepFunction scale(const StepFunction& f, double c) {
  StepFunction out;
  if (!std::isfinite(c)) throw input_error("scale: non-finite coefficient");
  for (const auto& [atom, v] : f.terms) {
    const double cv = c * v;
    if (std::abs(cv) >= kZeroTol) out.terms[atom] = cv;
  }
  return out;
}

StepFunction apply_T(const StepFunction& f, int k) {
  StepFunction out;
  for (const auto& [atom, v] : f.terms) out.terms[Atom{atom.translate + k, atom.word}] = v;
  return out;
}

double evaluate(const MeasureModel& mu, const AffineBranchGeometry& geom,
                const StepFunction& f, double x) {
  (void)mu;
  double acc = 0.0;
  for (const auto& [atom, v] : f.terms)
    if (cylinder_interval(geom, atom).contains(x)) acc += v;
  return acc;
}

std::vector<int> support_translates(const StepFunction& f) {
  std::vector<int> out;
  for (const auto& [atom, v] : f.terms) {
    (void)v;
    if (out.empty() || out.back() != atom.translate) out.push_back(atom.translate);
  }
  return out;
}

}  // namespace mimwave
