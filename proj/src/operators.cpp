#include "mimwave/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mimwave {

namespace {

constexpr double kGeomTol = 1e-9;

long long ipow(int base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

AffineBranchGeometry::AffineBranchGeometry(const IncidenceMatrix& A,
                                           std::vector<AffineBranch> branches_)
    : branches(std::move(branches_)) {
  if (static_cast<int>(branches.size()) != A.N)
    throw input_error("geometry: need one branch per symbol");
  for (int i = 0; i < A.N; ++i) {
    const AffineBranch& br = branches[static_cast<size_t>(i)];
    if (!(br.a > 0.0 && br.a < 1.0))
      throw input_error("geometry: slope of branch " + std::to_string(i) +
                        " must lie in (0,1)");
    if (!(br.lo < br.hi) || br.lo < -kGeomTol || br.hi > 1.0 + kGeomTol)
      throw input_error("geometry: interval of branch " + std::to_string(i) +
                        " must be nondegenerate inside [0,1]");
  }
  std::vector<int> order(branches.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return branches[static_cast<size_t>(i)].lo < branches[static_cast<size_t>(j)].lo;
  });
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    if (branches[static_cast<size_t>(order[i])].hi >
        branches[static_cast<size_t>(order[i + 1])].lo + kGeomTol)
      throw input_error("geometry: intervals overlap");
  }
  for (int i = 0; i < A.N; ++i) {
    const AffineBranch& br = branches[static_cast<size_t>(i)];
    const double flo = (br.lo - br.b) / br.a;
    const double fhi = (br.hi - br.b) / br.a;
    double hull_lo = 1.0, hull_hi = 0.0;
    for (int j = 0; j < A.N; ++j) {
      const AffineBranch& bj = branches[static_cast<size_t>(j)];
      if (A.at(i, j)) {
        hull_lo = std::min(hull_lo, bj.lo);
        hull_hi = std::max(hull_hi, bj.hi);
        if (bj.lo < flo - kGeomTol || bj.hi > fhi + kGeomTol)
          throw input_error("geometry: successor interval " + std::to_string(j) +
                            " escapes the expanded image of branch " + std::to_string(i));
      } else if (bj.hi > flo + kGeomTol && bj.lo < fhi - kGeomTol) {
        throw input_error("geometry: non-successor interval " + std::to_string(j) +
                          " meets the expanded image of branch " + std::to_string(i));
      }
    }
    if (std::abs(hull_lo - flo) > kGeomTol || std::abs(hull_hi - fhi) > kGeomTol)
      throw input_error("geometry: expanded image of branch " + std::to_string(i) +
                        " does not match the hull of its successors");
  }
}

RealInterval cylinder_interval(const AffineBranchGeometry& geom, const Atom& atom) {
  if (atom.word.empty()) throw input_error("cylinder_interval: empty word");
  const AffineBranch& last = geom.branches[static_cast<size_t>(atom.word.back())];
  double lo = last.lo, hi = last.hi;
  for (int i = atom.word.length() - 2; i >= 0; --i) {
    const AffineBranch& br = geom.branches[static_cast<size_t>(atom.word[i])];
    lo = br.a * lo + br.b;
    hi = br.a * hi + br.b;
  }
  return RealInterval{lo + atom.translate, hi + atom.translate};
}

ScalingResult apply_scaling(const MeasureModel& mu, int n, const Atom& atom) {
  if (!is_admissible(mu.A, atom.word))
    throw input_error("apply_scaling: inadmissible word");
  if (atom.word.empty()) throw input_error("apply_scaling: empty word");
  if (n == 0) return {{atom, 1.0}};

  ScalingResult out;
  if (n > 0) {
    auto dec = decompose_translate(mu.A, atom.translate, n);
    if (!dec) return out;
    const Word& w = dec->word;
    if (!mu.A.at(w.back(), atom.word.front())) return out;
    const Word head({atom.word.front()});
    const Word joined = w.concat(atom.word);
    const double coeff = std::sqrt(mu.value(head) / mu.value(w.append(atom.word.front())));
    out.emplace_back(Atom{static_cast<int>(dec->k), joined}, coeff);
    return out;
  }

  const int s = -n;
  const long long shift = ipow(mu.A.N, s) * atom.translate;
  if (atom.word.length() >= s + 1) {
    const Word w = atom.word.prefix(s);
    const Word tail = atom.word.suffix_from(s);
    const double coeff =
        std::sqrt(mu.value(w.append(tail.front())) / mu.value(Word({tail.front()})));
    out.emplace_back(Atom{static_cast<int>(word_offset(w, mu.A.N) + shift), tail}, coeff);
    return out;
  }
  // Short word: sum over all admissible length-s extensions and their successors.
  std::vector<Word> exts{atom.word};
  while (exts.front().length() < s) {
    std::vector<Word> next;
    for (const Word& w : exts)
      for (int j = 0; j < mu.A.N; ++j)
        if (mu.A.at(w.back(), j)) next.push_back(w.append(j));
    exts = std::move(next);
  }
  for (const Word& w : exts) {
    for (int j = 0; j < mu.A.N; ++j) {
      if (!mu.A.at(w.back(), j)) continue;
      const double coeff = std::sqrt(mu.value(w.append(j)) / mu.value(Word({j})));
      out.emplace_back(Atom{static_cast<int>(word_offset(w, mu.A.N) + shift), Word({j})},
                       coeff);
    }
  }
  return out;
}

StepFunction apply_scaling_fn(const MeasureModel& mu, int n, const StepFunction& f) {
  TermList raw;
  for (const auto& [atom, c] : f.terms)
    for (const auto& [img, v] : apply_scaling(mu, n, atom)) raw.emplace_back(img, c * v);
  return normalize(mu, raw);
}

StepFunction scaling_power(const MeasureModel& mu, int n, const StepFunction& f) {
  StepFunction out = f;
  const int step = n >= 0 ? 1 : -1;
  for (int i = 0; i != n; i += step) out = apply_scaling_fn(mu, step, out);
  return out;
}

PowerEquivalenceReport power_equivalence(const MeasureModel& mu, int n,
                                         const std::vector<Atom>& atoms) {
  if (n < 2) throw input_error("power_equivalence: n must be >= 2");
  PowerEquivalenceReport rep;
  for (const Atom& a : atoms) {
    const StepFunction unit = indicator(mu, a);
    const StepFunction direct = apply_scaling_fn(mu, n, unit);
    const StepFunction iterated = scaling_power(mu, n, unit);
    const double d = norm(mu, subtract(mu, direct, iterated));
    rep.entries.push_back(PowerEquivalenceEntry{a, d});
    rep.max_discrepancy = std::max(rep.max_discrepancy, d);
  }
  return rep;
}

double pointwise_scaling(const SystemSpec& sys, int n,
                         const std::function<double(double)>& f, double x) {
  if (!sys.geom) throw config_error("pointwise_scaling: system has no geometry");
  if (n < 1) throw input_error("pointwise_scaling: scale must be >= 1");
  const AffineBranchGeometry& geom = *sys.geom;
  const int k = static_cast<int>(std::floor(x));
  const double y = x - k;
  for (const Word& w : enumerate_words(sys.mu.A, n)) {
    for (int j = 0; j < sys.mu.A.N; ++j) {
      if (!sys.mu.A.at(w.back(), j)) continue;
      if (!cylinder_interval(geom, Atom{0, w.append(j)}).contains(y)) continue;
      double t = y;
      for (int i = 0; i < n; ++i) {
        const AffineBranch& br = geom.branches[static_cast<size_t>(w[i])];
        t = (t - br.b) / br.a;
      }
      const double weight =
          std::sqrt(sys.mu.value(Word({j})) / sys.mu.value(w.append(j)));
      const double arg =
          t + static_cast<double>(word_offset(w, sys.mu.A.N)) +
          static_cast<double>(ipow(sys.mu.A.N, n)) * static_cast<double>(k);
      return weight * f(arg);
    }
  }
  return 0.0;
}

}  // namespace mimwave
