#include "mimwave/filters.hpp"

#include <algorithm>
#include <cmath>

#include "mimwave/rng.hpp"

namespace mimwave {

namespace {

constexpr double kPruneTol = 0.0;  // keep exact arithmetic; prune true zeros only

void lp_put(LaurentPoly& p, int power, std::complex<double> c) {
  auto it = p.find(power);
  if (it == p.end()) {
    if (c != std::complex<double>(0.0, 0.0)) p.emplace(power, c);
    return;
  }
  it->second += c;
  if (std::abs(it->second.real()) <= kPruneTol && std::abs(it->second.imag()) <= kPruneTol)
    p.erase(it);
}

}  // namespace

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out = a;
  for (const auto& [pw, c] : b) lp_put(out, pw, c);
  return out;
}

LaurentPoly lp_scale(const LaurentPoly& a, std::complex<double> c) {
  LaurentPoly out;
  if (c == std::complex<double>(0.0, 0.0)) return out;
  for (const auto& [pw, v] : a) out.emplace(pw, c * v);
  return out;
}

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) lp_put(out, pa + pb, ca * cb);
  return out;
}

LaurentPoly lp_compose_power(const LaurentPoly& a, int n) {
  LaurentPoly out;
  for (const auto& [pw, c] : a) out.emplace(pw * n, c);
  return out;
}

std::complex<double> lp_eval(const LaurentPoly& a, std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [pw, c] : a) acc += c * std::pow(z, pw);
  return acc;
}

double lv_norm(const LaurentVector& f) {
  double s = 0.0;
  for (const LaurentPoly& p : f)
    for (const auto& [pw, c] : p) {
      (void)pw;
      s += std::norm(c);
    }
  return std::sqrt(s);
}

double lv_dist(const LaurentVector& f, const LaurentVector& g) {
  LaurentVector d;
  const size_t n = std::max(f.size(), g.size());
  for (size_t i = 0; i < n; ++i) {
    LaurentPoly p = i < f.size() ? f[i] : LaurentPoly{};
    if (i < g.size())
      for (const auto& [pw, c] : g[i]) lp_put(p, pw, -c);
    d.push_back(std::move(p));
  }
  return lv_norm(d);
}

FilterMatrix build_lowpass(const MeasureModel& mu) {
  if (!mu.is_markov()) throw input_error("build_lowpass: needs a first-order measure");
  const MarkovMeasure& mk = mu.markov();
  FilterMatrix F;
  F.kind = FilterMatrix::Kind::lowpass;
  F.out_rows = mu.A.N;
  F.N = mu.A.N;
  F.entries.assign(static_cast<size_t>(F.out_rows),
                   std::vector<LaurentPoly>(static_cast<size_t>(F.N)));
  for (int k = 0; k < mu.A.N; ++k)
    for (int l = 0; l < mu.A.N; ++l)
      if (mu.A.at(k, l))
        F.entries[k][l].emplace(k, std::complex<double>(std::sqrt(mk.Pi[k][l]), 0.0));
  return F;
}

FilterMatrix build_highpass(const MeasureModel& mu, int k, const OrthoMatrix& Mk) {
  if (k < 0 || k >= mu.A.N) throw input_error("build_highpass: symbol out of range");
  const std::vector<int> succ = mu.A.successors(k);
  if (Mk.q != static_cast<int>(succ.size()))
    throw input_error("build_highpass: matrix size does not match the successor count");
  FilterMatrix F;
  F.kind = FilterMatrix::Kind::highpass;
  F.block = k;
  F.out_rows = Mk.q - 1;
  F.N = mu.A.N;
  F.entries.assign(static_cast<size_t>(F.out_rows),
                   std::vector<LaurentPoly>(static_cast<size_t>(F.N)));
  for (int r = 1; r < Mk.q; ++r)
    for (size_t pos = 0; pos < succ.size(); ++pos)
      F.entries[static_cast<size_t>(r - 1)][static_cast<size_t>(succ[pos])].emplace(
          k, std::complex<double>(Mk.rows[static_cast<size_t>(r)][pos], 0.0));
  return F;
}

FilterMatrix build_highpass(const MeasureModel& mu, int k) {
  if (!mu.is_markov()) throw input_error("build_highpass: needs a first-order measure");
  if (k < 0 || k >= mu.A.N) throw input_error("build_highpass: symbol out of range");
  const MarkovMeasure& mk = mu.markov();
  const std::vector<int> succ = mu.A.successors(k);
  std::vector<double> row;
  for (int j : succ) row.push_back(std::sqrt(mk.Pi[k][j]));
  return build_highpass(mu, k, complete_orthonormal({row}, static_cast<int>(succ.size())));
}

LaurentVector apply_S(const FilterMatrix& F, const LaurentVector& f) {
  if (static_cast<int>(f.size()) != F.out_rows)
    throw input_error("apply_S: component count mismatch");
  LaurentVector out(static_cast<size_t>(F.N));
  for (int r = 0; r < F.out_rows; ++r) {
    const LaurentPoly dilated = lp_compose_power(f[static_cast<size_t>(r)], F.N);
    for (int l = 0; l < F.N; ++l) {
      if (F.entries[static_cast<size_t>(r)][static_cast<size_t>(l)].empty()) continue;
      const LaurentPoly prod =
          lp_mul(F.entries[static_cast<size_t>(r)][static_cast<size_t>(l)], dilated);
      out[static_cast<size_t>(l)] = lp_add(out[static_cast<size_t>(l)], prod);
    }
  }
  return out;
}

LaurentVector apply_S_adjoint(const FilterMatrix& F, const LaurentVector& h) {
  if (static_cast<int>(h.size()) != F.N)
    throw input_error("apply_S_adjoint: component count mismatch");
  LaurentVector out(static_cast<size_t>(F.out_rows));
  for (int r = 0; r < F.out_rows; ++r) {
    for (int l = 0; l < F.N; ++l) {
      for (const auto& [e, m] : F.entries[static_cast<size_t>(r)][static_cast<size_t>(l)]) {
        for (const auto& [pw, c] : h[static_cast<size_t>(l)]) {
          const int shifted = pw - e;
          if (shifted % F.N != 0) continue;
          lp_put(out[static_cast<size_t>(r)], shifted / F.N, std::conj(m) * c);
        }
      }
    }
  }
  return out;
}

namespace {

LaurentVector random_vector(SplitMix64& rng, size_t comps, int degree) {
  LaurentVector f(comps);
  for (LaurentPoly& p : f)
    for (int pw = -degree; pw <= degree; ++pw)
      p.emplace(pw, std::complex<double>(rng.next_sym(), rng.next_sym()));
  return f;
}

LaurentVector lv_scaled(const LaurentVector& f, double c) {
  LaurentVector out;
  out.reserve(f.size());
  for (const LaurentPoly& p : f) out.push_back(lp_scale(p, {c, 0.0}));
  return out;
}

}  // namespace

RelationReport relation_check(const MeasureModel& mu, int degree, int trials,
                              Convention conv, uint64_t seed) {
  if (degree < 0) throw input_error("relation_check: negative degree");
  if (trials < 1) throw input_error("relation_check: needs at least one trial");
  const FilterMatrix H = build_lowpass(mu);
  std::vector<FilterMatrix> G;
  for (int k = 0; k < mu.A.N; ++k) {
    FilterMatrix gk = build_highpass(mu, k);
    if (gk.out_rows > 0) G.push_back(std::move(gk));
  }
  const double sqrtN = std::sqrt(static_cast<double>(mu.A.N));
  const bool paper = conv == Convention::paper;
  // The convention only rescales the low-pass pair; high-pass blocks keep
  // the shared normalization in both readings.
  auto S_H = [&](const LaurentVector& f) {
    LaurentVector r = apply_S(H, f);
    return paper ? lv_scaled(r, sqrtN) : r;
  };
  auto S_H_adj = [&](const LaurentVector& f) {
    LaurentVector r = apply_S_adjoint(H, f);
    return paper ? lv_scaled(r, sqrtN) : r;
  };

  RelationReport rep;
  rep.convention = conv;
  rep.trials = trials;
  SplitMix64 rng(seed);
  double factor_acc = 0.0;

  for (int t = 0; t < trials; ++t) {
    const LaurentVector fN = random_vector(rng, static_cast<size_t>(mu.A.N), degree);

    // (1) low-pass isometry, measured factor.
    const LaurentVector hh = S_H_adj(S_H(fN));
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < fN.size(); ++i) {
      for (const auto& [pw, c] : fN[i]) {
        den += std::norm(c);
        auto it = hh[i].find(pw);
        if (it != hh[i].end()) num += (it->second * std::conj(c)).real();
      }
    }
    const double factor = num / den;
    factor_acc += factor;
    rep.err_low_isometry =
        std::max(rep.err_low_isometry, lv_dist(hh, lv_scaled(fN, factor)));

    for (size_t gi = 0; gi < G.size(); ++gi) {
      const LaurentVector fb =
          random_vector(rng, static_cast<size_t>(G[gi].out_rows), degree);
      // (2) high-pass isometry.
      rep.err_high_isometry = std::max(
          rep.err_high_isometry, lv_dist(apply_S_adjoint(G[gi], apply_S(G[gi], fb)), fb));
      // (3) low/high cross terms vanish.
      rep.err_cross =
          std::max(rep.err_cross, lv_norm(S_H_adj(apply_S(G[gi], fb))));
      rep.err_cross =
          std::max(rep.err_cross, lv_norm(apply_S_adjoint(G[gi], S_H(fN))));
      // (4) distinct high-pass blocks are orthogonal.
      for (size_t gj = 0; gj < G.size(); ++gj) {
        if (gi == gj) continue;
        rep.err_high_cross = std::max(
            rep.err_high_cross,
            lv_norm(apply_S_adjoint(G[gi], apply_S(G[gj], random_vector(
                rng, static_cast<size_t>(G[gj].out_rows), degree)))));
      }
    }

    // Completeness defect of the reconstruction side.
    LaurentVector rec = S_H(S_H_adj(fN));
    for (const FilterMatrix& gk : G) {
      const LaurentVector part = apply_S(gk, apply_S_adjoint(gk, fN));
      for (size_t i = 0; i < rec.size(); ++i) rec[i] = lp_add(rec[i], part[i]);
    }
    rep.completeness_defect = std::max(rep.completeness_defect, lv_dist(rec, fN));
  }
  rep.low_factor = factor_acc / trials;
  return rep;
}

}  // namespace mimwave
