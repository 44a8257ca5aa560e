// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failed criteria. Tolerances are pinned here and nowhere else.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "expected_values.hpp"
#include "helpers.hpp"
#include "mimwave/filters.hpp"
#include "mimwave/measure.hpp"
#include "mimwave/operators.hpp"
#include "mimwave/stepfunc.hpp"
#include "mimwave/transform.hpp"
#include "mimwave/wavelets.hpp"

using namespace mimwave;
namespace eg = expected::golden;

namespace {

constexpr double kTight = 1e-12;    // closed-form equalities
constexpr double kOperator = 1e-10; // operator identity residuals
constexpr double kDetect = 1e-10;   // parameter recovery
constexpr double kGross = 1e-4;     // discrepancies that must be visible

int failures = 0;

void report(int idx, bool ok, const std::string& label, const std::string& detail) {
  std::printf("%s criterion %d: %s [%s]\n", ok ? "PASS" : "FAIL", idx, label.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

std::string err_str(double err, double tol) {
  std::ostringstream ss;
  ss << "max err " << err << ", tol " << tol;
  return ss.str();
}

std::vector<Atom> atoms_up_to(const MeasureModel& mu, int depth, int bound) {
  std::vector<Atom> out;
  for (int len = 1; len <= depth; ++len)
    for (const Word& w : enumerate_words(mu.A, len))
      for (int m = -bound; m <= bound; ++m) out.push_back(Atom{m, w});
  return out;
}

double beta() { return (1.0 + std::sqrt(5.0)) / 2.0; }

// --- criterion 1: golden mother wavelet in closed form ---------------------

void criterion_1() {
  const MeasureModel& g = testutil::golden().mu;
  const auto blocks = markov_mothers(g);
  double err = 1.0;
  if (blocks.size() == 2 && blocks[0].mothers.size() == 1 && blocks[1].mothers.empty()) {
    const StepFunction& psi = blocks[0].mothers[0].fn;
    const double c00 = psi.terms.at(testutil::atom(0, {0, 0}));
    const double c01 = psi.terms.at(testutil::atom(0, {0, 1}));
    err = std::abs(c00 - std::sqrt(std::sqrt(5.0) * (2.0 - beta())));
    err = std::max(err, std::abs(c01 + std::pow(5.0, 0.25)));
    err = std::max(err, std::abs(norm(g, psi) - 1.0));
    err = std::max(err, std::abs(inner_product(g, psi, father(g, 0))));
    err = std::max(err, std::abs(inner_product(g, psi, father(g, 1))));
    err = std::max(err, psi.terms.size() == 2 ? 0.0 : 1.0);
  }
  report(1, err <= kTight, "golden mother matches sqrt(sqrt5*(2-beta)), -5^(1/4)",
         err_str(err, kTight));
}

// --- criterion 2: orthonormal completion of the golden row -----------------

void criterion_2() {
  const double b = beta();
  const OrthoMatrix M =
      complete_orthonormal({{std::sqrt(b - 1.0), std::sqrt(2.0 - b)}}, 2);
  const std::vector<std::vector<double>> want = {
      {std::sqrt(b - 1.0), std::sqrt(2.0 - b)},
      {std::sqrt(2.0 - b), -std::sqrt(b - 1.0)}};
  double err = 1.0;
  if (M.rows.size() == 2 && M.rows[0].size() == 2) {
    err = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        err = std::max(err, std::abs(M.rows[i][j] - want[i][j]));
  }
  report(2, err <= kTight, "completion returns the pinned 2x2 orthogonal matrix",
         err_str(err, kTight));
}

// --- criterion 3: one-step and scale-n operator identities -----------------

double operator_suite(const MeasureModel& mu) {
  const int N = mu.A.N;
  double err = 0.0;
  const auto atoms = atoms_up_to(mu, 3, 4);

  for (const Atom& a : atoms) {
    const StepFunction f = indicator(mu, a);
    // T U = U T^N
    err = std::max(err, testutil::dist(mu, apply_T(apply_scaling_fn(mu, 1, f), 1),
                                       apply_scaling_fn(mu, 1, apply_T(f, N))));
    // U U* = id
    err = std::max(err, testutil::dist(
                            mu, apply_scaling_fn(mu, 1, apply_scaling_fn(mu, -1, f)), f));
  }

  // Refinement identities, both parameterizations.
  for (int i = 0; i < N; ++i) {
    StepFunction via_pi;
    StepFunction via_nu;
    for (int j : mu.A.successors(i)) {
      const StepFunction tf = apply_T(father(mu, j), i);
      via_pi = add(mu, via_pi, scale(tf, std::sqrt(mu.markov().Pi[static_cast<size_t>(i)]
                                                               [static_cast<size_t>(j)])));
      via_nu = add(mu, via_nu,
                   scale(tf, std::sqrt(mu.value(testutil::word({i}).append(j)) /
                                       mu.value(testutil::word({i})))));
    }
    err = std::max(err, testutil::dist(mu, father(mu, i), apply_scaling_fn(mu, 1, via_pi)));
    err = std::max(err, testutil::dist(mu, father(mu, i), apply_scaling_fn(mu, 1, via_nu)));
  }

  // Translated fathers are orthonormal.
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = -4; k <= 4; ++k)
        for (int l = -4; l <= 4; ++l) {
          const double ip =
              inner_product(mu, apply_T(father(mu, i), k), apply_T(father(mu, j), l));
          err = std::max(err, std::abs(ip - (i == j && k == l ? 1.0 : 0.0)));
        }

  for (int n = 1; n <= 3; ++n) {
    const int Nn = static_cast<int>(std::pow(N, n)) ;
    std::vector<StepFunction> images;
    for (const Atom& a : atoms_up_to(mu, 1, 4)) {
      const StepFunction f = indicator(mu, a);
      // T U^(n) = U^(n) T^(N^n)
      err = std::max(err, testutil::dist(mu, apply_T(apply_scaling_fn(mu, n, f), 1),
                                         apply_scaling_fn(mu, n, apply_T(f, Nn))));
      // U^(-n) T = T^(N^n) U^(-n)
      err = std::max(err, testutil::dist(mu, apply_scaling_fn(mu, -n, apply_T(f, 1)),
                                         apply_T(apply_scaling_fn(mu, -n, f), Nn)));
      // U^(n) U^(-n) = id
      err = std::max(err, testutil::dist(
                              mu, apply_scaling_fn(mu, n, apply_scaling_fn(mu, -n, f)), f));
      // nonzero refinements are recovered by coarsening
      const StepFunction uf = apply_scaling_fn(mu, n, f);
      if (norm(mu, uf) > 1e-14) {
        err = std::max(err, testutil::dist(mu, apply_scaling_fn(mu, -n, uf), f));
        images.push_back(apply_scaling_fn(mu, n, scale(f, 1.0 / norm(mu, f))));
      }
    }
    // Gram of the surviving images U^(n) T^k phi_i.
    for (size_t a = 0; a < images.size(); ++a)
      for (size_t b = a; b < images.size(); ++b) {
        const double ip = inner_product(mu, images[a], images[b]);
        err = std::max(err, std::abs(ip - (a == b ? 1.0 : 0.0)));
      }
  }
  return err;
}

void criterion_3() {
  const MeasureModel& g = testutil::golden().mu;
  const MeasureModel rnd = testutil::random_full_markov(3, 311);

  double err = std::max(operator_suite(g), operator_suite(rnd));

  // U* U = id must fail on the golden system (T phi_1 is killed by U) and
  // hold on the complete shift.
  const StepFunction killed = apply_T(father(g, 1), 1);
  const double witness =
      testutil::dist(g, apply_scaling_fn(g, -1, apply_scaling_fn(g, 1, killed)), killed);
  double full_err = 0.0;
  for (const Atom& a : atoms_up_to(rnd, 2, 3)) {
    const StepFunction f = indicator(rnd, a);
    full_err = std::max(full_err, testutil::dist(
                                      rnd, apply_scaling_fn(rnd, -1, apply_scaling_fn(
                                                                        rnd, 1, f)), f));
  }
  err = std::max(err, full_err);

  const bool ok = err <= kOperator && witness >= 0.999;
  std::ostringstream detail;
  detail << err_str(err, kOperator) << "; golden U*U witness dist " << witness;
  report(3, ok, "scaling operator identities on golden and a random 3-shift",
         detail.str());
}

// --- criterion 4: first-order structure detection and recovery -------------

void criterion_4() {
  const MeasureModel src = testutil::random_full_markov(3, 2026);
  const MeasureModel tbl = testutil::table_model(src, 4);
  const ConsistencyResult good = markov_consistency(tbl.A, tbl.table());
  double err = 1.0;
  if (good.consistent && good.recovered) {
    err = 0.0;
    for (int i = 0; i < 3; ++i) {
      err = std::max(err, std::abs(good.recovered->p[static_cast<size_t>(i)] -
                                   src.markov().p[static_cast<size_t>(i)]));
      for (int j = 0; j < 3; ++j)
        err = std::max(err, std::abs(good.recovered->Pi[static_cast<size_t>(i)]
                                                       [static_cast<size_t>(j)] -
                                     src.markov().Pi[static_cast<size_t>(i)]
                                                    [static_cast<size_t>(j)]));
    }
  }

  const MeasureModel bad = testutil::perturbed_table_model(src, 4, 1e-3);
  const ConsistencyResult broken = markov_consistency(bad.A, bad.table());
  const bool rejected = !broken.consistent && broken.witness.has_value();

  std::ostringstream detail;
  detail << err_str(err, kDetect);
  if (rejected) {
    const ConsistencyWitness& w = *broken.witness;
    detail << "; rejected with witness (k=" << w.k << ", omega=";
    for (int s : w.omega.syms) detail << s;
    detail << ", j=" << w.j << ")";
  }
  report(4, err <= kDetect && rejected,
         "depth-4 table detected as first-order, perturbation rejected", detail.str());
}

// --- criterion 5: closed-form scale-n equals iterated one-step --------------

void criterion_5() {
  const MeasureModel& g = testutil::golden().mu;
  const auto atoms = atoms_up_to(g, 2, 2);
  double err = 0.0;
  for (int n = 2; n <= 3; ++n)
    err = std::max(err, power_equivalence(g, n, atoms).max_discrepancy);

  const MeasureModel tbl = testutil::table_model(g, 4);
  const std::vector<Atom> shallow = atoms_up_to(g, 1, 2);
  err = std::max(err, power_equivalence(tbl, 2, shallow).max_discrepancy);

  // Perturbing depth-3 values breaks stationarity right where a scale-2
  // closed form and two iterated one-step refinements first disagree.
  const MeasureModel bad = testutil::perturbed_table_model(g, 3, 1e-3);
  const double gap = power_equivalence(bad, 2, shallow).max_discrepancy;

  const bool ok = err <= kTight && gap > kGross;
  std::ostringstream detail;
  detail << err_str(err, kTight) << "; non-stationary gap " << gap;
  report(5, ok, "U^(n) equals U iterated n times exactly when first-order", detail.str());
}

// --- criterion 6: orthonormal bases, reconstruction, coarse projections ----

void criterion_6() {
  const SystemSpec& sys = testutil::golden();
  const MeasureModel& g = sys.mu;

  const auto one = one_sided_basis(sys, 2, 4);
  const auto two = two_sided_basis(sys, 2, 4);
  double err = std::max(gram(g, one).max_deviation, gram(g, two).max_deviation);

  double rec = 0.0;
  for (const Word& w : enumerate_words(g.A, 3))
    rec = std::max(rec, residual(g, indicator(g, Atom{0, w}), one));

  // || P_{V_{-n}} phi_j || along the coarse father families.
  std::vector<std::vector<double>> proj(2);
  for (int n = 1; n <= 3; ++n) {
    std::vector<StepFunction> family;
    for (int m = -2; m <= 2; ++m)
      for (int j = 0; j < g.A.N; ++j)
        family.push_back(apply_scaling_fn(g, -n, apply_T(father(g, j), m)));
    for (int j = 0; j < 2; ++j) {
      double s = 0.0;
      for (const StepFunction& e : family) {
        const double ip = inner_product(g, father(g, j), e);
        s += ip * ip;
      }
      proj[static_cast<size_t>(j)].push_back(std::sqrt(s));
    }
  }
  bool decreasing = true;
  for (const auto& seq : proj)
    for (size_t i = 1; i < seq.size(); ++i)
      if (!(seq[i] < seq[i - 1] - 1e-6)) decreasing = false;
  const double proj_err = std::max(
      {std::abs(proj[0][0] - eg::proj_v1), std::abs(proj[0][1] - eg::proj_v2),
       std::abs(proj[0][2] - eg::proj_v3)});
  err = std::max(err, proj_err);

  const bool ok = err <= kOperator && rec <= kOperator && decreasing;
  std::ostringstream detail;
  detail << err_str(std::max(err, rec), kOperator) << "; projections phi_0: "
         << proj[0][0] << " > " << proj[0][1] << " > " << proj[0][2];
  report(6, ok, "bases orthonormal, depth-3 cylinders rebuilt, coarse norms shrink",
         detail.str());
}

// --- criterion 7: surviving translate sets and odd-father family -----------

void criterion_7() {
  const MeasureModel& g = testutil::golden().mu;
  bool sets_ok = true;
  for (int n = 1; n <= 4; ++n) {
    const std::vector<int> got = d_set(g.A, n, 0, 0, (1 << n) - 1);
    std::vector<int> want;
    for (int m = 0; m < (1 << n); ++m) {
      bool adjacent = false;
      for (int b = 0; b + 1 < n; ++b)
        if (((m >> b) & 1) && ((m >> (b + 1)) & 1)) adjacent = true;
      if (!adjacent) want.push_back(m);
    }
    if (got != want) sets_ok = false;
  }

  const auto two = two_sided_basis(testutil::golden(), 1, 4);
  std::set<std::string> names;
  for (const BasisElement& e : two) names.insert(descriptor(e));
  bool family_ok = true;
  for (int m = -4; m <= 4; ++m) {
    const bool phi1 = names.count("phi[1] t=" + std::to_string(m)) > 0;
    if (phi1 != (std::abs(m) % 2 == 1)) family_ok = false;
    if (names.count("phi[0] t=" + std::to_string(m)) > 0) family_ok = false;
  }

  std::ostringstream detail;
  detail << (sets_ok ? "translate sets match the no-adjacent-ones rule"
                     : "translate set mismatch")
         << "; odd phi_1 family " << (family_ok ? "present" : "wrong");
  report(7, sets_ok && family_ok,
         "golden translate sets and unscaled father family as predicted", detail.str());
}

// --- criterion 8: filter bank relations under both conventions -------------

void criterion_8() {
  const MeasureModel& g = testutil::golden().mu;
  const MeasureModel rnd = testutil::random_full_markov(3, 4242);

  const RelationReport ga = relation_check(g, 4, 50, Convention::amended, 7);
  const RelationReport ra = relation_check(rnd, 4, 50, Convention::amended, 7);
  double err = std::max({ga.err_low_isometry, ga.err_high_isometry, ga.err_cross,
                         ga.err_high_cross, ra.err_low_isometry, ra.err_high_isometry,
                         ra.err_cross, ra.err_high_cross});
  err = std::max({err, std::abs(ga.low_factor - 1.0), std::abs(ra.low_factor - 1.0)});

  const RelationReport gp = relation_check(g, 4, 50, Convention::paper, 7);
  const RelationReport rp = relation_check(rnd, 4, 50, Convention::paper, 7);
  err = std::max({err, std::abs(gp.low_factor - 2.0), std::abs(rp.low_factor - 3.0)});

  const bool ok = err <= kOperator && ga.completeness_defect > 0.1 &&
                  ra.completeness_defect <= kOperator;
  std::ostringstream detail;
  detail << err_str(err, kOperator) << "; golden defect " << ga.completeness_defect
         << ", full-shift defect " << ra.completeness_defect;
  report(8, ok, "filter relations, paper factor N, golden incompleteness", detail.str());
}

// --- criterion 9: pointwise refinement of the periodic identity ------------

void criterion_9() {
  const SystemSpec& sys = testutil::golden();
  const double b = beta();
  const auto id_periodic = [](double y) { return y - std::floor(y); };
  double err = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = (i + 0.5) / 200.0;
    const double want = x < 2.0 - b   ? std::sqrt(b) * b * x
                        : x < b - 1.0 ? b * x
                                      : b * (b * x - 1.0);
    err = std::max(err, std::abs(pointwise_scaling(sys, 1, id_periodic, x) - want));
  }
  report(9, err <= kTight, "U(id) matches the three-piece closed form at 200 points",
         err_str(err, kTight));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures == 0) std::printf("all 9 criteria passed\n");
  return failures;
}
