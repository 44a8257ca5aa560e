#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "mimwave/symbolic.hpp"

namespace mimwave {

// Stationary first-order cylinder weights: value of [w] is
// p[w0] * Pi[w0][w1] * ... * Pi[w_{n-2}][w_{n-1}].
struct MarkovMeasure {
  std::vector<double> p;
  std::vector<std::vector<double>> Pi;

  MarkovMeasure() = default;
  // Validates against A: p and Pi sized N, p_i > 0 summing to 1 (1e-12),
  // rows of Pi summing to 1 (1e-12), Pi_ij > 0 exactly where A_ij == 1.
  MarkovMeasure(const IncidenceMatrix& A, std::vector<double> p_,
                std::vector<std::vector<double>> Pi_);

  double value(const Word& w) const;
};

// Explicit cylinder weights down to a finite depth; no Markov structure
// assumed. Queries below the stored depth throw depth_error.
struct TableMeasure {
  int depth = 0;
  std::map<Word, double> values;

  TableMeasure() = default;
  // Validates: depth >= 2, exactly the admissible words of each length
  // 1..depth appear, all values > 0, depth-1 values sum to 1 (1e-12),
  // additivity value[w] == sum_j value[wj] within 1e-10 relative.
  TableMeasure(const IncidenceMatrix& A, int depth_, std::map<Word, double> values_);

  double value(const Word& w) const;
};

// A measure model always travels with its incidence matrix.
struct MeasureModel {
  IncidenceMatrix A;
  std::variant<MarkovMeasure, TableMeasure> measure;

  bool is_markov() const { return std::holds_alternative<MarkovMeasure>(measure); }
  const MarkovMeasure& markov() const { return std::get<MarkovMeasure>(measure); }
  const TableMeasure& table() const { return std::get<TableMeasure>(measure); }

  // Weight of the cylinder [w]; empty word has weight 1.
  double value(const Word& w) const;
  // Deepest reliable word length (table depth, or huge for Markov).
  int max_depth() const;
};

// Witness for a failed stationarity check: the word k.w.j whose weight
// deviates most (relatively) from the first-order prediction.
struct ConsistencyWitness {
  int k = 0;
  Word omega;
  int j = 0;
  double lhs = 0.0;  // value[k w j]
  double rhs = 0.0;  // kappa_{k, w0} * value[w j]
};

struct ConsistencyResult {
  bool consistent = false;
  double max_violation = 0.0;
  std::optional<MarkovMeasure> recovered;
  std::optional<ConsistencyWitness> witness;
};

// Decides whether a depth >= 3 table is the cylinder function of a
// stationary first-order measure, using the depth-2 ratios
// kappa_{k,i} = value[(k,i)] / value[(i)] as candidates and testing
// value[k w j] == kappa_{k, w0} * value[w j] for every stored word of
// length >= 3, relative tolerance 1e-9. On success recovers (p, Pi).
// Throws depth_error if depth < 3.
ConsistencyResult markov_consistency(const IncidenceMatrix& A, const TableMeasure& table);

}  // namespace mimwave
