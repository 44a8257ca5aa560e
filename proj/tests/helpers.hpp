#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mimwave/cli.hpp"
#include "mimwave/operators.hpp"
#include "mimwave/rng.hpp"
#include "mimwave/stepfunc.hpp"

namespace testutil {

inline const mimwave::SystemSpec& golden() {
  static const mimwave::SystemSpec sys =
      mimwave::load_system(std::string(MIMWAVE_FIXTURE_DIR) + "/golden.json");
  return sys;
}

inline const mimwave::SystemSpec& cantor3() {
  static const mimwave::SystemSpec sys =
      mimwave::load_system(std::string(MIMWAVE_FIXTURE_DIR) + "/cantor3.json");
  return sys;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(MIMWAVE_FIXTURE_DIR) + "/" + name;
}

inline mimwave::Word word(std::initializer_list<int> syms) {
  return mimwave::Word(std::vector<int>(syms));
}

inline mimwave::Atom atom(int translate, std::initializer_list<int> syms) {
  return mimwave::Atom{translate, word(syms)};
}

// Stationary measure on the complete shift: random rows, p from power
// iteration so that prefix and suffix additivity both hold.
inline mimwave::MeasureModel random_full_markov(int N, uint64_t seed) {
  mimwave::SplitMix64 rng(seed);
  std::vector<std::vector<int>> ones(static_cast<size_t>(N),
                                     std::vector<int>(static_cast<size_t>(N), 1));
  mimwave::IncidenceMatrix A(N, ones);
  std::vector<std::vector<double>> Pi(static_cast<size_t>(N),
                                      std::vector<double>(static_cast<size_t>(N)));
  for (auto& row : Pi) {
    double s = 0.0;
    for (double& x : row) {
      x = 0.1 + rng.next_unit();
      s += x;
    }
    for (double& x : row) x /= s;
  }
  std::vector<double> p(static_cast<size_t>(N), 1.0 / N);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> q(static_cast<size_t>(N), 0.0);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) q[static_cast<size_t>(j)] += p[static_cast<size_t>(i)] * Pi[static_cast<size_t>(i)][static_cast<size_t>(j)];
    p = q;
  }
  double s = 0.0;
  for (double x : p) s += x;
  for (double& x : p) x /= s;
  return {A, mimwave::MarkovMeasure(A, std::move(p), std::move(Pi))};
}

inline mimwave::MeasureModel table_model(const mimwave::MeasureModel& src, int depth) {
  std::map<mimwave::Word, double> vals;
  for (int len = 1; len <= depth; ++len)
    for (const auto& w : mimwave::enumerate_words(src.A, len)) vals[w] = src.value(w);
  return {src.A, mimwave::TableMeasure(src.A, depth, std::move(vals))};
}

// Moves eps of mass between the first two children of the first depth-1
// branching word; parents keep their sums, so only stationarity breaks.
inline mimwave::MeasureModel perturbed_table_model(const mimwave::MeasureModel& src,
                                                   int depth, double eps) {
  std::map<mimwave::Word, double> vals;
  for (int len = 1; len <= depth; ++len)
    for (const auto& w : mimwave::enumerate_words(src.A, len)) vals[w] = src.value(w);
  for (const auto& w : mimwave::enumerate_words(src.A, depth - 1)) {
    auto succ = src.A.successors(w.back());
    if (succ.size() < 2) continue;
    vals[w.append(succ[0])] -= eps;
    vals[w.append(succ[1])] += eps;
    break;
  }
  return {src.A, mimwave::TableMeasure(src.A, depth, std::move(vals))};
}

inline double dist(const mimwave::MeasureModel& mu, const mimwave::StepFunction& f,
                   const mimwave::StepFunction& g) {
  return mimwave::norm(mu, mimwave::subtract(mu, f, g));
}

inline mimwave::StepFunction random_step(const mimwave::MeasureModel& mu, int depth,
                                         int translate_bound, mimwave::SplitMix64& rng) {
  mimwave::TermList terms;
  for (int m = -translate_bound; m <= translate_bound; ++m)
    for (const auto& w : mimwave::enumerate_words(mu.A, depth))
      terms.push_back({mimwave::Atom{m, w}, rng.next_sym()});
  return mimwave::normalize(mu, terms);
}

}  // namespace testutil
