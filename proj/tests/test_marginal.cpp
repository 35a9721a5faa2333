#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testkit.hpp"
#include "tropmarg/fixtures.hpp"
#include "tropmarg/marginal.hpp"

using namespace tropmarg;
using fixtures::mp;

TEST_CASE("word templates evaluate their products") {
  const Matrix a = mp({{3, 2}, {1, 5}});
  const Matrix x = mp({{3, 9}, {7, 3}});
  const Matrix y = mp({{-3, 4}, {0, -3}});
  CHECK(WordTemplate::sandwich(a).evaluate(std::vector<Matrix>{x, y}) == mat_product({x, a, y}));
  CHECK(WordTemplate::sandwich(a).base_value() == a);
  CHECK(WordTemplate::additive(a).base_value() == a);
  CHECK(WordTemplate::additive(a).arity() == 1);
  CHECK(WordTemplate::chain(std::vector<Matrix>{a, a, a}).arity() == 2);
  CHECK_THROWS_AS(WordTemplate::sandwich(a).evaluate(std::vector<Matrix>{x}), DimensionMismatch);
  CHECK_THROWS(WordTemplate({a}, {{Atom::slot(1)}}));
  CHECK_THROWS(WordTemplate({a}, {{Atom::slot(0), Atom::slot(0)}}));
  CHECK_THROWS(WordTemplate({a}, {{Atom::constant(3)}}));
  CHECK_THROWS(WordTemplate({a}, {}));
}

TEST_CASE("marginal sets reject non-marginal tuples and deduplicate") {
  const auto def = fixtures::definition();
  MarginalSet set(WordTemplate::right(def.a));
  CHECK(set.insert({def.right_marginals[0]}));
  CHECK_FALSE(set.insert({def.right_marginals[0]}));
  CHECK(set.size() == 1);
  // One entry below X* breaks the equation.
  const Matrix low = def.right_marginals[0].with_entry(0, 1, Scalar(-100));
  CHECK_FALSE(verify_marginal(set.word(), std::vector<Matrix>{low}));
  CHECK_THROWS_AS(set.insert({low}), NotMarginal);
}

TEST_CASE("additive marginality is X >= A") {
  const auto def = fixtures::definition();
  const WordTemplate w = WordTemplate::additive(def.a);
  CHECK(verify_marginal(w, std::vector<Matrix>{def.a}));
  CHECK(verify_marginal(w, std::vector<Matrix>{def.additive}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const Matrix x = def.a.with_entry(i, j, def.a(i, j) - Scalar(1));
      CHECK_FALSE(verify_marginal(w, std::vector<Matrix>{x}));
    }
  // Infinite entries are accepted by verification.
  CHECK(verify_marginal(w, std::vector<Matrix>{Matrix::zero(SemiringKind::min_plus, 3)}));
  CHECK(additive_marginal_bound(def.a) == def.a);
}

TEST_CASE("residuation tables on the worked examples") {
  const auto ex = fixtures::residuation();
  CHECK(residual_right(ex.a).bound == ex.x_star);
  CHECK(residual_right(ex.a).side == Side::right);
  CHECK(residual_left(ex.a).bound == residual_right(ex.a.transposed()).bound.transposed());
  CHECK(max_possible_matrix(diagonal_positions(3), ex.x_star, Scalar(100)) == ex.x_hat);
  for (const Matrix& x : ex.outputs) CHECK(cover_check(ex.a, x, Side::right));
  CHECK_THROWS(cover_check(ex.a, ex.x_star.with_entry(0, 1, Scalar(0)), Side::right));
  CHECK_THROWS(residual_right(mp({{0, Scalar::pos_infinity()}, {1, 2}})));
}

TEST_CASE("five-factor tables keep their tight diagonal") {
  // x*_pprr <= 0, and for every (i, j) an argmin (p, r) of a_ip + b_pr + c_rj is tight.
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 3;
    const Matrix a = testkit::random_int_matrix(SemiringKind::min_plus, n, -30, 30, rng);
    const Matrix b = testkit::random_int_matrix(SemiringKind::min_plus, n, -30, 30, rng);
    const Matrix c = testkit::random_int_matrix(SemiringKind::min_plus, n, -30, 30, rng);
    const auto res = five_factor_residual(a, b, c);
    CHECK(res.product == mat_product({a, b, c}));
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = 0; r < n; ++r) {
        CHECK(res.bound.at({p, p, r, r}) <= Scalar(0));
        CHECK((res.bound.at({p, p, r, r}) == Scalar(0)) == (res.tight.count({p, r}) == 1));
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        bool covered = false;
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t r = 0; r < n; ++r)
            if (a(i, p) + b(p, r) + c(r, j) == res.product(i, j) && res.tight.count({p, r})) covered = true;
        CHECK(covered);
      }
  }
}

TEST_CASE("chain tables") {
  // Constant factors leave nothing to gain: every bound is zero.
  const Matrix zero = mp({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  const auto res = n_factor_residual(std::vector<Matrix>{zero, zero, zero});
  CHECK(res.bound.order() == 4);
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t q = 0; q < 3; ++q)
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t s = 0; s < 3; ++s) CHECK(res.bound.at({p, q, r, s}) == Scalar(0));
  const auto ex = fixtures::five_factor();
  const auto five = five_factor_residual(ex.a, ex.b, ex.c);
  // The two-slot chain table is the five-factor table.
  CHECK(n_factor_residual(std::vector<Matrix>{ex.a, ex.b, ex.c}).bound == five.bound);
}

TEST_CASE("every sampler emits marginal tuples") {
  for (const auto& r : testkit::sampler_suites(500)) {
    INFO(r.summary());
    CHECK(r.ok());
  }
}

TEST_CASE("samplers are strict on the worked instances") {
  const auto bil = fixtures::bilinear();
  const auto ff = fixtures::five_factor();
  bool sandwich_strict = false;
  bool five_strict = false;
  for (std::uint64_t seed = 0; seed < 20 && !(sandwich_strict && five_strict); ++seed) {
    Rng rng(seed);
    SamplerOptions opts;
    opts.count = 5;
    const MarginalSet sandwich = sample_sandwich_marginal(bil.a, opts, rng);
    for (const Tuple& t : sandwich.tuples()) {
      if (mat_mul(t[0], bil.a) != bil.a && mat_mul(bil.a, t[1]) != bil.a) sandwich_strict = true;
    }
    const MarginalSet five = sample_five_factor_marginal(ff.a, ff.b, ff.c, opts, rng);
    for (const Tuple& t : five.tuples()) {
      if (mat_mul(ff.a, t[0]) != ff.a && mat_mul(t[1], ff.c) != ff.c) five_strict = true;
    }
  }
  CHECK(sandwich_strict);
  CHECK(five_strict);
}

TEST_CASE("sampler limits") {
  const Matrix a = mp({{0}});
  SamplerOptions opts;
  // A 1x1 right marginal of [0] is [0] only: asking for two exhausts the budget.
  opts.count = 2;
  Rng rng(1);
  CHECK_THROWS_AS(sample_right_marginal(a, opts, rng), SamplerExhausted);
  opts.count = 1;
  CHECK(sample_right_marginal(a, opts, rng).size() == 1);
  opts.count = 0;
  CHECK_THROWS_AS(sample_right_marginal(a, opts, rng), std::invalid_argument);
  opts.count = 1;
  opts.l1 = 5;
  opts.l2 = 4;
  CHECK_THROWS_AS(sample_sandwich_marginal(a, opts, rng), std::invalid_argument);
}

TEST_CASE("one-sided draws stay between X* and X^") {
  const auto ex = fixtures::residuation();
  Rng rng(77);
  SamplerOptions opts;
  opts.count = 20;
  const MarginalSet set = sample_right_marginal(ex.a, opts, rng);
  for (const Tuple& t : set.tuples()) {
    CHECK(entrywise_le(ex.x_star, t[0]));
    CHECK(entrywise_le(t[0], ex.x_hat));
  }
}

TEST_CASE("residuation is the extreme grid solution") {
  const auto r = testkit::residuation_oracle(60);
  INFO(r.summary());
  CHECK(r.ok());
}

TEST_CASE("cover check agrees with the product") {
  const auto r = testkit::cover_check_oracle(40);
  INFO(r.summary());
  CHECK(r.ok());
  CHECK(r.tally.at("equal") > 0);
}
