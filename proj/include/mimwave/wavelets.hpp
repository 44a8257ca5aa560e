#pragma once

#include <string>

#include "mimwave/operators.hpp"

namespace mimwave {

// Square orthogonal matrix whose rows were produced by completing a set
// of prescribed orthonormal rows.
struct OrthoMatrix {
  int q = 0;
  std::vector<std::vector<double>> rows;
};

// Gram-Schmidt completion. The given rows must be orthonormal within
// 1e-10 (throws input_error otherwise). Remaining rows come from seeding
// with standard basis vectors in index order, skipping seeds whose
// residual norm is below 1e-8; each completed row is scaled so that its
// first entry of magnitude > 1e-10 is positive.
OrthoMatrix complete_orthonormal(std::vector<std::vector<double>> given, int q);

// One mother wavelet: detail function attached to a cylinder block.
// word: the block (single symbol k for one-step mothers, full w else).
// branch: row index 1..q-1 inside the block's orthogonal matrix.
struct MotherWavelet {
  Word word;
  int branch = 0;
  StepFunction fn;
};

struct MotherBlock {
  Word word;
  OrthoMatrix M;
  std::vector<MotherWavelet> mothers;  // branches 1..q-1, possibly empty
};

// One-step mother wavelets of a stationary first-order measure: for each
// symbol k with at least two successors, completes the row
// (sqrt(Pi[k][j]))_{j : A_kj = 1} and maps row l to
// psi^{k,l} = sum_j c_j * (p_k Pi[k][j])^{-1/2} 1_{[k j]}.
std::vector<MotherBlock> markov_mothers(const MeasureModel& mu);

// Mother wavelets of a single cylinder block [w], general measure: completes
// (sqrt(value[w j] / value[w]))_{j : A_{w_end, j} = 1} and maps row l to
// psi^{w,l} = sum_j c_j * value[w j]^{-1/2} 1_{[w j]}.
MotherBlock word_mothers(const MeasureModel& mu, const Word& w);

struct BasisElement {
  enum class Kind { father, mother };
  Kind kind = Kind::father;
  // Scale exponent: 0 for unscaled, n > 0 for n refining steps applied,
  // n < 0 for |n| coarsening steps applied.
  int scale = 0;
  Word word;        // father: (j); mother: block word
  int branch = 0;   // mother row index, 0 for fathers
  int translate = 0;
  StepFunction fn;
};

// Stable human- and machine-readable id, e.g. "phi[1] t=-2",
// "psi[01,1] t=0", "U^2 psi[0,1] t=3", "U*^1 phi[1] t=5".
std::string descriptor(const BasisElement& e);

// Orthonormal system spanning the depth-(n_max + 1) refinement of the
// one-sided (positive translate direction handled by T only) space:
// fathers T^m phi_j plus mothers T^m psi^{w,l} for admissible words w of
// length 1..n_max + 1, translates |m| <= translate_bound.
std::vector<BasisElement> one_sided_basis(const SystemSpec& sys, int n_max,
                                          int translate_bound);

// Orthonormal system for the full two-sided multiresolution (stationary
// first-order measures only; throws input_error otherwise):
//  - U^n T^m psi^{k,l} for 0 <= n <= n_max, m in d_set(n, k) (all m at n = 0);
//  - U*^n T^m psi^{k,l} for 1 <= n <= n_max, all m;
//  - U*^(n-1) T^m phi_j for 1 <= n <= n_max and (j, m) with U T^m phi_j = 0.
// Translates range over |m| <= translate_bound.
std::vector<BasisElement> two_sided_basis(const SystemSpec& sys, int n_max,
                                          int translate_bound);

// Translates m in [m_lo, m_hi] for which U^n T^m psi^{k,.} survives:
// m decomposes as c(u) + N^n k' with u admissible and A[u_end][k] == 1.
// n == 0 keeps every m.
std::vector<int> d_set(const IncidenceMatrix& A, int n, int k, int m_lo, int m_hi);

}  // namespace mimwave
