#include "mimwave/wavelets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mimwave {

namespace {

constexpr double kGivenOrthoTol = 1e-10;
constexpr double kSeedSkipTol = 1e-8;
constexpr double kSignTol = 1e-10;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string word_digits(const Word& w) {
  std::string s;
  bool wide = false;
  for (int v : w.syms) wide = wide || v > 9;
  for (int i = 0; i < w.length(); ++i) {
    if (wide && i) s += '.';
    s += std::to_string(w[i]);
  }
  return s;
}

MotherBlock build_block(const MeasureModel& mu, const Word& w,
                        const std::vector<double>& first_row,
                        const std::vector<double>& atom_weights,
                        const std::vector<int>& succ) {
  MotherBlock block;
  block.word = w;
  block.M = complete_orthonormal({first_row}, static_cast<int>(succ.size()));
  for (int l = 1; l < static_cast<int>(succ.size()); ++l) {
    TermList raw;
    for (size_t j = 0; j < succ.size(); ++j)
      raw.emplace_back(Atom{0, w.append(succ[j])},
                       block.M.rows[static_cast<size_t>(l)][j] * atom_weights[j]);
    block.mothers.push_back(MotherWavelet{w, l, normalize(mu, raw)});
  }
  return block;
}

}  // namespace

OrthoMatrix complete_orthonormal(std::vector<std::vector<double>> given, int q) {
  if (q < 1) throw input_error("complete_orthonormal: size must be >= 1");
  if (static_cast<int>(given.size()) > q)
    throw input_error("complete_orthonormal: more rows than the size allows");
  for (const auto& r : given)
    if (static_cast<int>(r.size()) != q)
      throw input_error("complete_orthonormal: row length mismatch");
  for (size_t i = 0; i < given.size(); ++i) {
    for (size_t j = 0; j <= i; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      if (std::abs(dot(given[i], given[j]) - target) > kGivenOrthoTol)
        throw input_error("complete_orthonormal: given rows are not orthonormal");
    }
  }

  OrthoMatrix M;
  M.q = q;
  M.rows = std::move(given);
  for (int seed = 0; seed < q && static_cast<int>(M.rows.size()) < q; ++seed) {
    std::vector<double> v(static_cast<size_t>(q), 0.0);
    v[static_cast<size_t>(seed)] = 1.0;
    // Two projection passes keep the residual orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& r : M.rows) {
        const double c = dot(v, r);
        for (int t = 0; t < q; ++t) v[static_cast<size_t>(t)] -= c * r[static_cast<size_t>(t)];
      }
    }
    const double nrm = std::sqrt(dot(v, v));
    if (nrm < kSeedSkipTol) continue;
    for (double& x : v) x /= nrm;
    for (double x : v) {
      if (std::abs(x) > kSignTol) {
        if (x < 0.0)
          for (double& y : v) y = -y;
        break;
      }
    }
    M.rows.push_back(std::move(v));
  }
  if (static_cast<int>(M.rows.size()) != q)
    throw input_error("complete_orthonormal: completion failed");
  return M;
}

std::vector<MotherBlock> markov_mothers(const MeasureModel& mu) {
  if (!mu.is_markov()) throw input_error("markov_mothers: needs a first-order measure");
  const MarkovMeasure& mk = mu.markov();
  std::vector<MotherBlock> blocks;
  for (int k = 0; k < mu.A.N; ++k) {
    const std::vector<int> succ = mu.A.successors(k);
    std::vector<double> row, weights;
    for (int j : succ) {
      row.push_back(std::sqrt(mk.Pi[k][j]));
      weights.push_back(1.0 / std::sqrt(mk.p[static_cast<size_t>(k)] * mk.Pi[k][j]));
    }
    blocks.push_back(build_block(mu, Word({k}), row, weights, succ));
  }
  return blocks;
}

MotherBlock word_mothers(const MeasureModel& mu, const Word& w) {
  if (w.empty()) throw input_error("word_mothers: empty word");
  if (!is_admissible(mu.A, w)) throw input_error("word_mothers: inadmissible word");
  const double base = mu.value(w);
  const std::vector<int> succ = mu.A.successors(w.back());
  std::vector<double> row, weights;
  for (int j : succ) {
    const double child = mu.value(w.append(j));
    row.push_back(std::sqrt(child / base));
    weights.push_back(1.0 / std::sqrt(child));
  }
  return build_block(mu, w, row, weights, succ);
}

std::string descriptor(const BasisElement& e) {
  std::string s;
  if (e.scale > 0)
    s += "U^" + std::to_string(e.scale) + " ";
  else if (e.scale < 0)
    s += "U*^" + std::to_string(-e.scale) + " ";
  if (e.kind == BasisElement::Kind::father)
    s += "phi[" + word_digits(e.word) + "]";
  else
    s += "psi[" + word_digits(e.word) + "," + std::to_string(e.branch) + "]";
  s += " t=" + std::to_string(e.translate);
  return s;
}

std::vector<BasisElement> one_sided_basis(const SystemSpec& sys, int n_max,
                                          int translate_bound) {
  if (n_max < 0) throw input_error("one_sided_basis: n_max must be >= 0");
  if (translate_bound < 0) throw input_error("one_sided_basis: negative translate bound");
  const MeasureModel& mu = sys.mu;
  std::vector<BasisElement> basis;
  for (int m = -translate_bound; m <= translate_bound; ++m) {
    for (int j = 0; j < mu.A.N; ++j) {
      BasisElement e;
      e.kind = BasisElement::Kind::father;
      e.word = Word({j});
      e.translate = m;
      e.fn = apply_T(father(mu, j), m);
      basis.push_back(std::move(e));
    }
  }
  for (int s = 1; s <= n_max + 1; ++s) {
    for (const Word& w : enumerate_words(mu.A, s)) {
      const MotherBlock block = word_mothers(mu, w);
      for (const MotherWavelet& mw : block.mothers) {
        for (int m = -translate_bound; m <= translate_bound; ++m) {
          BasisElement e;
          e.kind = BasisElement::Kind::mother;
          e.word = w;
          e.branch = mw.branch;
          e.translate = m;
          e.fn = apply_T(mw.fn, m);
          basis.push_back(std::move(e));
        }
      }
    }
  }
  return basis;
}

std::vector<int> d_set(const IncidenceMatrix& A, int n, int k, int m_lo, int m_hi) {
  if (n < 0) throw input_error("d_set: negative scale");
  if (k < 0 || k >= A.N) throw input_error("d_set: symbol out of range");
  std::vector<int> out;
  for (int m = m_lo; m <= m_hi; ++m) {
    if (n == 0) {
      out.push_back(m);
      continue;
    }
    auto dec = decompose_translate(A, m, n);
    if (dec && A.at(dec->word.back(), k)) out.push_back(m);
  }
  return out;
}

std::vector<BasisElement> two_sided_basis(const SystemSpec& sys, int n_max,
                                          int translate_bound) {
  if (!sys.mu.is_markov())
    throw input_error("two_sided_basis: needs a first-order measure");
  if (n_max < 0) throw input_error("two_sided_basis: n_max must be >= 0");
  const MeasureModel& mu = sys.mu;
  const std::vector<MotherBlock> blocks = markov_mothers(mu);

  std::vector<BasisElement> basis;
  // Refining family: U^n T^m psi^{k,l}, m restricted to the surviving set.
  for (int n = 0; n <= n_max; ++n) {
    for (const MotherBlock& block : blocks) {
      for (const MotherWavelet& mw : block.mothers) {
        for (int m : d_set(mu.A, n, block.word.front(), -translate_bound, translate_bound)) {
          BasisElement e;
          e.kind = BasisElement::Kind::mother;
          e.scale = n;
          e.word = block.word;
          e.branch = mw.branch;
          e.translate = m;
          e.fn = scaling_power(mu, n, apply_T(mw.fn, m));
          basis.push_back(std::move(e));
        }
      }
    }
  }
  // Coarsening family: U*^n T^m psi^{k,l}, every translate survives.
  for (int n = 1; n <= n_max; ++n) {
    for (const MotherBlock& block : blocks) {
      for (const MotherWavelet& mw : block.mothers) {
        for (int m = -translate_bound; m <= translate_bound; ++m) {
          BasisElement e;
          e.kind = BasisElement::Kind::mother;
          e.scale = -n;
          e.word = block.word;
          e.branch = mw.branch;
          e.translate = m;
          e.fn = scaling_power(mu, -n, apply_T(mw.fn, m));
          basis.push_back(std::move(e));
        }
      }
    }
  }
  // Residual fathers: U*^s T^m phi_j for the (j, m) killed by one refining
  // step; s = 0 keeps the plain translates themselves.
  for (int s = 0; s < n_max; ++s) {
    for (int j = 0; j < mu.A.N; ++j) {
      for (int m = -translate_bound; m <= translate_bound; ++m) {
        if (!apply_scaling(mu, 1, Atom{m, Word({j})}).empty()) continue;
        BasisElement e;
        e.kind = BasisElement::Kind::father;
        e.scale = -s;
        e.word = Word({j});
        e.translate = m;
        e.fn = scaling_power(mu, -s, apply_T(father(mu, j), m));
        basis.push_back(std::move(e));
      }
    }
  }
  return basis;
}

}  // namespace mimwave
