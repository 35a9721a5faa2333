#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testkit.hpp"
#include "tropmarg/constraints.hpp"

using namespace tropmarg;

namespace {
const VarId xv0{0, 0, 0}, xv1{0, 0, 1}, yv0{1, 0, 0}, yv1{1, 0, 1};
}

TEST_CASE("least point of a small system") {
  ConstraintSystem s;
  for (VarId v : {xv0, xv1, yv0, yv1}) s.set_lower_bound(v, Scalar(0));
  s.add_sum_ge(xv0, yv0, Scalar(5));
  s.add_sum_eq(xv1, yv0, Scalar(7));
  s.add_sum_ge(xv1, yv1, Scalar(-3));
  const auto sol = solve_feasible_min(s);
  REQUIRE(sol);
  // X side first: xv0 = 0 and xv1 = 0 force yv0 = 7 through the equality.
  CHECK(sol->at(xv0) == 0);
  CHECK(sol->at(xv1) == 0);
  CHECK(sol->at(yv0) == 7);
  CHECK(sol->at(yv1) == 0);
  CHECK(satisfies(s, *sol));
}

TEST_CASE("infeasible through an equality and a bound") {
  ConstraintSystem s;
  s.set_lower_bound(xv0, Scalar(5));
  s.set_lower_bound(yv0, Scalar(5));
  s.add_sum_eq(xv0, yv0, Scalar(3));
  CHECK_FALSE(solve_feasible(s));
  CHECK_FALSE(solve_feasible_min(s));
}

TEST_CASE("infeasible cycle of equalities") {
  ConstraintSystem s;
  for (VarId v : {xv0, xv1, yv0, yv1}) s.set_lower_bound(v, Scalar(-100));
  s.add_sum_eq(xv0, yv0, Scalar(0));
  s.add_sum_eq(xv1, yv0, Scalar(0));
  s.add_sum_eq(xv1, yv1, Scalar(0));
  s.add_sum_eq(xv0, yv1, Scalar(1));
  CHECK_FALSE(solve_feasible(s));
}

TEST_CASE("rational constants are solved exactly") {
  ConstraintSystem s;
  s.set_lower_bound(xv0, Scalar::parse("1/3"));
  s.set_lower_bound(yv0, Scalar(0));
  s.add_sum_ge(xv0, yv0, Scalar::parse("5/2"));
  const auto sol = solve_feasible_min(s);
  REQUIRE(sol);
  CHECK(sol->at(xv0) == mpq_class(1, 3));
  CHECK(sol->at(yv0) == mpq_class(13, 6));
}

TEST_CASE("malformed systems are rejected") {
  SUBCASE("missing lower bound") {
    ConstraintSystem s;
    s.set_lower_bound(xv0, Scalar(0));
    s.add_sum_ge(xv0, yv0, Scalar(1));
    CHECK_THROWS_AS(solve_feasible(s), std::invalid_argument);
  }
  SUBCASE("infinite constant") {
    ConstraintSystem s;
    s.set_lower_bound(xv0, Scalar(0));
    s.set_lower_bound(yv0, Scalar(0));
    s.add_sum_ge(xv0, yv0, Scalar::pos_infinity());
    CHECK_THROWS_AS(solve_feasible(s), std::invalid_argument);
  }
  SUBCASE("odd cycle") {
    ConstraintSystem s;
    for (VarId v : {xv0, xv1, yv0}) s.set_lower_bound(v, Scalar(0));
    s.add_sum_ge(xv0, yv0, Scalar(1));
    s.add_sum_ge(yv0, xv1, Scalar(1));
    s.add_sum_ge(xv1, xv0, Scalar(1));
    CHECK_THROWS_AS(solve_feasible(s), std::invalid_argument);
  }
  SUBCASE("self pair") {
    ConstraintSystem s;
    s.set_lower_bound(xv0, Scalar(0));
    s.add_sum_ge(xv0, xv0, Scalar(1));
    CHECK_THROWS_AS(solve_feasible(s), std::invalid_argument);
  }
}

TEST_CASE("verdicts match exhaustive search") {
  const auto r = testkit::solver_oracle(400);
  INFO(r.summary());
  CHECK(r.ok());
  CHECK(r.tally.at("feasible") > 50);
  CHECK(r.tally.at("infeasible") > 50);
}

TEST_CASE("sandwich systems of small matrices agree with grid search") {
  const auto r = testkit::sandwich_solver_oracle(150);
  INFO(r.summary());
  CHECK(r.ok());
  CHECK(r.tally.at("feasible") > 20);
  CHECK(r.tally.at("infeasible") > 20);
}
