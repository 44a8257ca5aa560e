#pragma once

#include <complex>
#include <cstdint>
#include <map>

#include "mimwave/wavelets.hpp"

namespace mimwave {

// Laurent polynomial in z: power -> coefficient, zero coefficients pruned.
using LaurentPoly = std::map<int, std::complex<double>>;

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_scale(const LaurentPoly& a, std::complex<double> c);
LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b);
// Substitution z -> z^n.
LaurentPoly lp_compose_power(const LaurentPoly& a, int n);
std::complex<double> lp_eval(const LaurentPoly& a, std::complex<double> z);

// Vector of Laurent polynomials (one component per cylinder symbol).
using LaurentVector = std::vector<LaurentPoly>;

double lv_norm(const LaurentVector& f);
double lv_dist(const LaurentVector& f, const LaurentVector& g);

// Matrix of Laurent polynomials encoding one filter bank block.
// Low-pass: N x N, entry(k, l) = sqrt(Pi[k][l]) * z^k when A_kl == 1.
// High-pass for block k: (q_k - 1) x N, entry(j, l) = M_k[j][l'] * z^k on
// the successor columns (zero elsewhere), rows j = 1..q_k - 1.
struct FilterMatrix {
  enum class Kind { lowpass, highpass };
  Kind kind = Kind::lowpass;
  int block = -1;  // high-pass symbol, -1 for low-pass
  int out_rows = 0;
  int N = 0;
  std::vector<std::vector<LaurentPoly>> entries;  // out_rows x N
};

FilterMatrix build_lowpass(const MeasureModel& mu);
FilterMatrix build_highpass(const MeasureModel& mu, int k, const OrthoMatrix& Mk);
// Convenience: derives M_k the same way markov_mothers does.
FilterMatrix build_highpass(const MeasureModel& mu, int k);

// Down-up filter pair. The transposed symbol acts on an out_rows-component
// input and produces an N-component output:
//   (S_F f)_l = sum_r entry(r, l) * f_r(z^N).
// The adjoint decimates: component r of S*_F h collects the powers of
// sum_l conj(entry(r, l)-coeffs) h_l that are congruent to the entry's
// shift mod N, including the 1/N averaging.
LaurentVector apply_S(const FilterMatrix& F, const LaurentVector& f);
LaurentVector apply_S_adjoint(const FilterMatrix& F, const LaurentVector& h);

// "paper" scales the low-pass S and S* by sqrt(N) each (high-pass blocks
// unchanged); "amended" is the isometric normalization.
enum class Convention { amended, paper };

struct RelationReport {
  Convention convention = Convention::amended;
  int trials = 0;
  // max over trials of || S*_H S_H f - factor * f || etc.
  double err_low_isometry = 0.0;   // factor below
  double low_factor = 1.0;         // measured S*_H S_H ~ factor * I
  double err_high_isometry = 0.0;  // S*_G S_G = I per block
  double err_cross = 0.0;          // S*_H S_G = 0 and S*_G S_H = 0
  double err_high_cross = 0.0;     // S*_Gi S_Gj = 0, i != j
  double completeness_defect = 0.0;  // max || (S_H S*_H + sum S_G S*_G - I) f ||
};

// Monte Carlo verification of the filter bank relations on random Laurent
// vectors with powers in [-degree, degree]. Deterministic for fixed seed.
RelationReport relation_check(const MeasureModel& mu, int degree, int trials,
                              Convention conv, uint64_t seed);

}  // namespace mimwave
