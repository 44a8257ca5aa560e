#include <cmath>

#include "doctest.h"
#include "expected_values.hpp"
#include "helpers.hpp"
#include "mimwave/operators.hpp"
#include "mimwave/stepfunc.hpp"

using namespace mimwave;
using testutil::atom;
using testutil::word;
namespace eg = expected::golden;

TEST_CASE("normalize refines each translate to its deepest word") {
  const auto& mu = testutil::golden().mu;

  // 1_[0] + 1_[01] = 1_[00] + 2 * 1_[01].
  const auto f = normalize(mu, {{atom(0, {0}), 1.0}, {atom(0, {0, 1}), 1.0}});
  REQUIRE(f.terms.size() == 2);
  CHECK(f.terms.at(atom(0, {0, 0})) == 1.0);
  CHECK(f.terms.at(atom(0, {0, 1})) == 2.0);

  // Translates refine independently.
  const auto g = normalize(mu, {{atom(0, {0}), 1.0}, {atom(1, {1, 0}), 1.0}});
  REQUIRE(g.terms.size() == 2);
  CHECK(g.terms.count(atom(0, {0})) == 1);
  CHECK(g.terms.count(atom(1, {1, 0})) == 1);
}

TEST_CASE("normalize drops cancelled and tiny atoms") {
  const auto& mu = testutil::golden().mu;
  const auto f = normalize(mu, {{atom(0, {0}), 1.0},
                                {atom(0, {0, 0}), -1.0},
                                {atom(0, {0, 1}), -1.0}});
  CHECK(f.is_zero());
  CHECK(normalize(mu, {{atom(2, {1}), 1e-15}}).is_zero());
}

TEST_CASE("normalize validates words") {
  const auto& mu = testutil::golden().mu;
  CHECK_THROWS_AS(normalize(mu, {{atom(0, {1, 1}), 1.0}}), input_error);
  CHECK_THROWS_AS(normalize(mu, {{atom(0, {3}), 1.0}}), input_error);

  // Empty word = root cylinder; refines to the depth-1 cover.
  const auto root = normalize(mu, {{Atom{0, Word{}}, 1.0}});
  REQUIRE(root.terms.size() == 2);
  CHECK(root.terms.at(atom(0, {0})) == 1.0);
  CHECK(root.terms.at(atom(0, {1})) == 1.0);

  const auto tbl = testutil::table_model(mu, 3);
  // Refinement past the table depth is not representable.
  CHECK_THROWS_AS(normalize(tbl, {{atom(0, {0, 0, 0, 1}), 1.0}}), depth_error);
  CHECK_NOTHROW(normalize(tbl, {{atom(0, {0, 0, 0}), 1.0}}));
}

TEST_CASE("inner products follow the prefix overlap rule") {
  const auto& mu = testutil::golden().mu;
  const auto i0 = indicator(mu, atom(0, {0}));
  const auto i00 = indicator(mu, atom(0, {0, 0}));
  const auto i01 = indicator(mu, atom(0, {0, 1}));
  const auto i10 = indicator(mu, atom(0, {1, 0}));

  CHECK(std::abs(inner_product(mu, i0, i00) - eg::nu00) < 1e-15);
  CHECK(std::abs(inner_product(mu, i0, i0) - eg::p0) < 1e-15);
  CHECK(inner_product(mu, i00, i01) == 0.0);
  CHECK(inner_product(mu, i0, i10) == 0.0);
  CHECK(inner_product(mu, i0, indicator(mu, atom(1, {0}))) == 0.0);
  CHECK(std::abs(norm(mu, i01) - std::sqrt(eg::nu01)) < 1e-15);
}

TEST_CASE("fathers are orthonormal unit indicators") {
  const auto& mu = testutil::golden().mu;
  const auto f0 = father(mu, 0);
  const auto f1 = father(mu, 1);
  CHECK(std::abs(norm(mu, f0) - 1.0) < 1e-12);
  CHECK(std::abs(norm(mu, f1) - 1.0) < 1e-12);
  CHECK(inner_product(mu, f0, f1) == 0.0);
  CHECK(std::abs(inner_product(mu, f0, indicator(mu, atom(0, {0}))) - std::sqrt(eg::p0)) <
        1e-15);
}

TEST_CASE("linear operations stay canonical") {
  const auto& mu = testutil::golden().mu;
  SplitMix64 rng(7u);
  const auto f = testutil::random_step(mu, 2, 2, rng);
  const auto g = testutil::random_step(mu, 1, 2, rng);

  CHECK(subtract(mu, f, f).is_zero());
  CHECK(testutil::dist(mu, add(mu, f, g), add(mu, g, f)) == 0.0);
  const auto h = lin_comb(mu, {{2.0, &f}, {-1.0, &g}});
  const auto h2 = subtract(mu, add(mu, f, subtract(mu, f, g)), StepFunction{});
  CHECK(testutil::dist(mu, h, h2) < 1e-12);
  CHECK(std::abs(norm(mu, scale(f, -3.0)) - 3.0 * norm(mu, f)) < 1e-12);
}

TEST_CASE("translation is unitary and exact") {
  const auto& mu = testutil::golden().mu;
  SplitMix64 rng(11u);
  const auto f = testutil::random_step(mu, 2, 3, rng);
  const auto g = testutil::random_step(mu, 2, 3, rng);

  const auto tf = apply_T(f, 5);
  CHECK(std::abs(inner_product(mu, tf, apply_T(g, 5)) - inner_product(mu, f, g)) < 1e-12);
  CHECK(testutil::dist(mu, apply_T(tf, -5), f) == 0.0);
  CHECK(support_translates(apply_T(father(mu, 0), -2)) == std::vector<int>{-2});
}

TEST_CASE("evaluation respects half-open cylinder intervals") {
  const auto& sys = testutil::golden();
  const auto& mu = sys.mu;
  REQUIRE(sys.geom);
  const auto f0 = father(mu, 0);
  const auto f1 = father(mu, 1);
  const double split = eg::beta - 1.0;

  CHECK(std::abs(evaluate(mu, *sys.geom, f0, 0.3) - eg::eval_phi0) < 1e-12);
  CHECK(evaluate(mu, *sys.geom, f0, 0.7) == 0.0);
  CHECK(evaluate(mu, *sys.geom, f0, split) == 0.0);
  CHECK(evaluate(mu, *sys.geom, f1, split) > 1.0);
  CHECK(evaluate(mu, *sys.geom, f0, -0.1) == 0.0);
  CHECK(std::abs(evaluate(mu, *sys.geom, apply_T(f0, 3), 3.3) - eg::eval_phi0) < 1e-12);
}

TEST_CASE("support translates are sorted and distinct") {
  const auto& mu = testutil::golden().mu;
  const auto f = normalize(mu, {{atom(4, {0}), 1.0},
                                {atom(-2, {1}), 1.0},
                                {atom(4, {1}), 0.5}});
  CHECK(support_translates(f) == std::vector<int>{-2, 4});
}
