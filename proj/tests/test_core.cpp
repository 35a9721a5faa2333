#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testkit.hpp"
#include "tropmarg/fixtures.hpp"
#include "tropmarg/matrix.hpp"

using namespace tropmarg;
using fixtures::mp;

TEST_CASE("scalar literals") {
  CHECK(Scalar::parse("12") == Scalar(12));
  CHECK(Scalar::parse("-3/4").to_string() == "-3/4");
  CHECK(Scalar::parse("6/8").to_string() == "3/4");
  CHECK(Scalar::parse("inf") == Scalar::pos_infinity());
  CHECK(Scalar::parse("+inf") == Scalar::pos_infinity());
  CHECK(Scalar::parse("-inf") == Scalar::neg_infinity());
  CHECK(Scalar::pos_infinity().to_string() == "inf");
  CHECK(Scalar::neg_infinity().to_string() == "-inf");
  for (const char* bad : {"", "1/0", "abc", "1.5", "--1", "1/", "inf2"}) {
    CHECK_THROWS_AS(Scalar::parse(bad), std::invalid_argument);
  }
  CHECK(Scalar::parse("123456789012345678901234567890").to_string() ==
        "123456789012345678901234567890");
}

TEST_CASE("scalar arithmetic with infinities") {
  CHECK(Scalar(3) + Scalar::pos_infinity() == Scalar::pos_infinity());
  CHECK(Scalar(3) + Scalar::neg_infinity() == Scalar::neg_infinity());
  CHECK_THROWS(Scalar::pos_infinity() + Scalar::neg_infinity());
  CHECK(Scalar::neg_infinity() < Scalar(-1000000));
  CHECK(Scalar(1000000) < Scalar::pos_infinity());
  CHECK(-Scalar::pos_infinity() == Scalar::neg_infinity());
  CHECK(Scalar(6) * mpq_class(1, 4) == Scalar::parse("3/2"));
  CHECK_THROWS_AS(Scalar::pos_infinity().to_int64(), std::domain_error);
  CHECK_THROWS(Scalar::parse("1/2").to_int64());
}

TEST_CASE("matrix construction rejects the wrong infinity") {
  CHECK_NOTHROW(Matrix(SemiringKind::min_plus, {{0, Scalar::pos_infinity()}, {1, 2}}));
  CHECK_THROWS(Matrix(SemiringKind::min_plus, {{0, Scalar::neg_infinity()}, {1, 2}}));
  CHECK_THROWS(Matrix(SemiringKind::max_plus, {{0, Scalar::pos_infinity()}, {1, 2}}));
  CHECK_THROWS_AS(Matrix(SemiringKind::min_plus, 2, {Scalar(1)}), DimensionMismatch);
  CHECK_THROWS(Matrix(SemiringKind::min_plus, 0, {}));
}

TEST_CASE("small products by hand") {
  const Matrix a = mp({{3, 2}, {1, 5}});
  // min(3+3, 2+1) = 3, min(3+2, 2+5) = 5, min(1+3, 5+1) = 4, min(1+2, 5+5) = 3
  CHECK(mat_mul(a, a) == mp({{3, 5}, {4, 3}}));
  const Matrix b(SemiringKind::max_plus, {{3, 2}, {1, 5}});
  CHECK(mat_mul(b, b) == Matrix(SemiringKind::max_plus, {{6, 7}, {6, 10}}));
  CHECK(mat_add(a, mp({{4, 0}, {1, 9}})) == mp({{3, 0}, {1, 5}}));
  CHECK(mat_pow(a, 0) == Matrix::identity(SemiringKind::min_plus, 2));
  CHECK(mat_pow(a, 3) == mat_product({a, a, a}));
  CHECK(scalar_mul(Scalar(2), a) == mp({{5, 4}, {3, 7}}));
  CHECK_THROWS_AS(mat_mul(a, b), DimensionMismatch);
  CHECK_THROWS_AS(mat_mul(a, Matrix::identity(SemiringKind::min_plus, 3)), DimensionMismatch);
}

TEST_CASE("polynomial of a matrix") {
  const Matrix a = mp({{54, 15, 33}, {59, 87, 53}, {9, 63, 80}});
  const TropPolynomial p({Scalar(-69), Scalar(-97), Scalar(60)});
  const Matrix expected = mat_add(mat_add(scalar_mul(Scalar(-69), Matrix::identity(SemiringKind::min_plus, 3)),
                                          scalar_mul(Scalar(-97), a)),
                                  scalar_mul(Scalar(60), mat_mul(a, a)));
  CHECK(poly_eval(p, a) == expected);
  CHECK(poly_eval(p, a) == mp({{-69, -82, -64}, {-38, -69, -44}, {-88, -34, -69}}));
  CHECK_THROWS(TropPolynomial({}));
}

TEST_CASE("semiring laws against the schoolbook product") {
  // Random matrices with some entries at the additive neutral.
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const SemiringKind kind = seed % 2 ? SemiringKind::max_plus : SemiringKind::min_plus;
    const std::size_t n = 1 + seed % 4;
    auto draw = [&] {
      std::vector<Scalar> e;
      for (std::size_t i = 0; i < n * n; ++i) {
        if (uniform_int(rng, 0, 5) == 0) {
          e.push_back(semiring_zero(kind));
        } else {
          e.emplace_back(static_cast<long>(uniform_int(rng, -20, 20)));
        }
      }
      return Matrix(kind, n, std::move(e));
    };
    const Matrix a = draw(), b = draw(), c = draw();
    const Matrix id = Matrix::identity(kind, n);
    const Matrix zero = Matrix::zero(kind, n);
    CAPTURE(seed);
    CHECK(mat_mul(a, b) == testkit::naive_mul(a, b));
    CHECK(mat_add(a, b) == testkit::naive_add(a, b));
    CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
    CHECK(mat_mul(a, mat_add(b, c)) == mat_add(mat_mul(a, b), mat_mul(a, c)));
    CHECK(mat_mul(mat_add(a, b), c) == mat_add(mat_mul(a, c), mat_mul(b, c)));
    CHECK(mat_add(a, a) == a);
    CHECK(mat_add(a, zero) == a);
    CHECK(mat_mul(a, id) == a);
    CHECK(mat_mul(id, a) == a);
    CHECK(mat_mul(a, zero) == zero);
    CHECK(a.negated().negated() == a);
    CHECK(a.negated().kind() == dual(kind));
  }
}

TEST_CASE("semiring names") {
  CHECK(parse_semiring("min-plus") == SemiringKind::min_plus);
  CHECK(parse_semiring("max-plus") == SemiringKind::max_plus);
  CHECK(to_string(SemiringKind::max_plus) == "max-plus");
  CHECK_THROWS(parse_semiring("plus-times"));
}
