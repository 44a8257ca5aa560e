#include "mimwave/measure.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mimwave {

namespace {

constexpr double kSumTol = 1e-12;
constexpr double kAdditivityTol = 1e-10;   // relative
constexpr double kConsistencyTol = 1e-9;   // relative

std::string word_text(const Word& w) {
  std::string s = "(";
  for (int i = 0; i < w.length(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

}  // namespace

MarkovMeasure::MarkovMeasure(const IncidenceMatrix& A, std::vector<double> p_,
                             std::vector<std::vector<double>> Pi_)
    : p(std::move(p_)), Pi(std::move(Pi_)) {
  const int N = A.N;
  if (static_cast<int>(p.size()) != N || static_cast<int>(Pi.size()) != N)
    throw input_error("markov measure: p and Pi must have size N");
  double psum = 0.0;
  for (double x : p) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw input_error("markov measure: p entries must be positive");
    psum += x;
  }
  if (std::abs(psum - 1.0) > kSumTol)
    throw input_error("markov measure: p does not sum to 1");
  for (int i = 0; i < N; ++i) {
    if (static_cast<int>(Pi[i].size()) != N)
      throw input_error("markov measure: Pi row " + std::to_string(i) + " wrong length");
    double rsum = 0.0;
    for (int j = 0; j < N; ++j) {
      const double x = Pi[i][j];
      if (!std::isfinite(x)) throw input_error("markov measure: non-finite Pi entry");
      if (A.at(i, j)) {
        if (!(x > 0.0))
          throw input_error("markov measure: Pi[" + std::to_string(i) + "][" +
                            std::to_string(j) + "] must be positive where A is 1");
      } else if (x != 0.0) {
        throw input_error("markov measure: Pi[" + std::to_string(i) + "][" +
                          std::to_string(j) + "] must be 0 where A is 0");
      }
      rsum += x;
    }
    if (std::abs(rsum - 1.0) > kSumTol)
      throw input_error("markov measure: Pi row " + std::to_string(i) +
                        " does not sum to 1");
  }
}

double MarkovMeasure::value(const Word& w) const {
  if (w.empty()) return 1.0;
  double v = p[static_cast<size_t>(w.front())];
  for (int i = 0; i + 1 < w.length(); ++i) v *= Pi[w[i]][w[i + 1]];
  return v;
}

TableMeasure::TableMeasure(const IncidenceMatrix& A, int depth_,
                           std::map<Word, double> values_)
    : depth(depth_), values(std::move(values_)) {
  if (depth < 2) throw input_error("table measure: depth must be >= 2");
  for (const auto& [w, v] : values) {
    if (w.empty() || w.length() > depth)
      throw input_error("table measure: word " + word_text(w) + " outside depth range");
    if (!is_admissible(A, w))
      throw input_error("table measure: inadmissible word " + word_text(w));
    if (!(v > 0.0) || !std::isfinite(v))
      throw input_error("table measure: value of " + word_text(w) +
                        " must be positive and finite");
  }
  double top = 0.0;
  for (int len = 1; len <= depth; ++len) {
    for (const Word& w : enumerate_words(A, len)) {
      auto it = values.find(w);
      if (it == values.end())
        throw input_error("table measure: missing value for " + word_text(w));
      if (len == 1) top += it->second;
      if (len < depth) {
        double children = 0.0;
        for (int j = 0; j < A.N; ++j) {
          if (!A.at(w.back(), j)) continue;
          auto child = values.find(w.append(j));
          if (child == values.end())
            throw input_error("table measure: missing value for " + word_text(w.append(j)));
          children += child->second;
        }
        if (std::abs(children - it->second) > kAdditivityTol * it->second)
          throw input_error("table measure: additivity fails at " + word_text(w));
      }
    }
  }
  if (std::abs(top - 1.0) > kSumTol)
    throw input_error("table measure: depth-1 values do not sum to 1");
  size_t expected = 0;
  for (int len = 1; len <= depth; ++len) expected += enumerate_words(A, len).size();
  if (values.size() != expected)
    throw input_error("table measure: unexpected extra entries");
}

double TableMeasure::value(const Word& w) const {
  if (w.empty()) return 1.0;
  if (w.length() > depth)
    throw depth_error("table measure: word " + word_text(w) + " deeper than depth " +
                      std::to_string(depth));
  auto it = values.find(w);
  // Validation guarantees every admissible word is present, so a miss
  // means the cylinder is empty.
  return it == values.end() ? 0.0 : it->second;
}

double MeasureModel::value(const Word& w) const {
  if (is_markov()) return markov().value(w);
  return table().value(w);
}

int MeasureModel::max_depth() const {
  if (is_markov()) return std::numeric_limits<int>::max();
  return table().depth;
}

ConsistencyResult markov_consistency(const IncidenceMatrix& A, const TableMeasure& table) {
  if (table.depth < 3)
    throw depth_error("markov_consistency: needs table depth >= 3");

  // Candidate one-step ratios from the depth-2 data.
  std::vector<std::vector<double>> kappa(static_cast<size_t>(A.N),
                                         std::vector<double>(static_cast<size_t>(A.N), 0.0));
  for (int k = 0; k < A.N; ++k)
    for (int i = 0; i < A.N; ++i)
      if (A.at(k, i))
        kappa[k][i] = table.value(Word({k, i})) / table.value(Word({i}));

  ConsistencyResult res;
  for (int len = 3; len <= table.depth; ++len) {
    for (const Word& w : enumerate_words(A, len)) {
      const double lhs = table.value(w);
      const double rhs = kappa[w.front()][w[1]] * table.value(w.suffix_from(1));
      const double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
      if (rel > res.max_violation) {
        res.max_violation = rel;
        res.witness = ConsistencyWitness{w.front(), w.prefix(len - 1).suffix_from(1),
                                         w.back(), lhs, rhs};
      }
    }
  }
  if (res.max_violation > kConsistencyTol) {
    res.consistent = false;
    return res;
  }
  res.consistent = true;
  res.witness.reset();

  // Recover (p, Pi); rows renormalized so first-order validation passes
  // even when the table carries additivity slack near its own tolerance.
  std::vector<double> p(static_cast<size_t>(A.N));
  double psum = 0.0;
  for (int i = 0; i < A.N; ++i) {
    p[static_cast<size_t>(i)] = table.value(Word({i}));
    psum += p[static_cast<size_t>(i)];
  }
  for (double& x : p) x /= psum;
  std::vector<std::vector<double>> Pi(static_cast<size_t>(A.N),
                                      std::vector<double>(static_cast<size_t>(A.N), 0.0));
  for (int k = 0; k < A.N; ++k) {
    double rsum = 0.0;
    for (int i = 0; i < A.N; ++i) {
      if (A.at(k, i))
        Pi[k][i] = kappa[k][i] * table.value(Word({i})) / table.value(Word({k}));
      rsum += Pi[k][i];
    }
    for (int i = 0; i < A.N; ++i) Pi[k][i] /= rsum;
  }
  res.recovered = MarkovMeasure(A, std::move(p), std::move(Pi));
  return res;
}

}  // namespace mimwave
