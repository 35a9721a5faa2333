#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tropmarg/scalar.hpp"

namespace tropmarg {

/// min-plus: (min, +, +inf, 0).  max-plus: (max, +, -inf, 0).
enum class SemiringKind { min_plus, max_plus };

std::string_view to_string(SemiringKind kind);
SemiringKind parse_semiring(std::string_view text);
SemiringKind dual(SemiringKind kind);

/// Additive neutral (the semiring's infinity).
Scalar semiring_zero(SemiringKind kind);
Scalar oplus(SemiringKind kind, const Scalar& a, const Scalar& b);
inline Scalar otimes(const Scalar& a, const Scalar& b) { return a + b; }

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Square dense matrix over a tropical semiring. Immutable once built.
class Matrix {
public:
  /// Entries in row-major order. Throws if the count is not dim*dim, dim is
  /// zero, or an infinite entry is not the kind's additive neutral.
  Matrix(SemiringKind kind, std::size_t dim, std::vector<Scalar> entries);
  Matrix(SemiringKind kind, std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(SemiringKind kind, std::size_t dim);
  /// All entries equal to the additive neutral.
  static Matrix zero(SemiringKind kind, std::size_t dim);
  static Matrix from_rows(SemiringKind kind, const std::vector<std::vector<Scalar>>& rows);

  SemiringKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const Scalar& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Scalar> entries() const { return entries_; }
  std::vector<std::vector<Scalar>> rows() const;

  bool all_finite() const;
  Matrix with_entry(std::size_t row, std::size_t col, Scalar value) const;
  Matrix transposed() const;
  /// Entrywise negation, moved to the dual semiring.
  Matrix negated() const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
  SemiringKind kind_;
  std::size_t dim_;
  std::vector<Scalar> entries_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Throws DimensionMismatch unless dims and kinds agree.
void require_compatible(const Matrix& a, const Matrix& b);

Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_mul(const Matrix& a, const Matrix& b);
/// Left-to-right product of a non-empty chain.
Matrix mat_product(std::span<const Matrix> chain);
Matrix mat_product(std::initializer_list<Matrix> chain);
Matrix mat_pow(const Matrix& a, unsigned exponent);
Matrix scalar_mul(const Scalar& c, const Matrix& a);
/// Entrywise a <= b in the ordinary order of extended rationals.
bool entrywise_le(const Matrix& a, const Matrix& b);

/// a_0 ⊕ a_1 x ⊕ ... ⊕ a_k x^k over the ambient semiring of the argument.
class TropPolynomial {
public:
  explicit TropPolynomial(std::vector<Scalar> coefficients);

  std::span<const Scalar> coefficients() const { return coefficients_; }
  std::size_t degree() const { return coefficients_.size() - 1; }

  friend bool operator==(const TropPolynomial&, const TropPolynomial&) = default;

private:
  std::vector<Scalar> coefficients_;
};

Matrix poly_eval(const TropPolynomial& p, const Matrix& a);

}  // namespace tropmarg
