#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "tropmarg/matrix.hpp"
#include "tropmarg/rng.hpp"

namespace tropmarg {

/// Integer sampling range [lo, hi].
struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

// Circulant C(c_1..c_n): row i is the value list cyclically right-shifted i times.
Matrix make_circulant(std::span<const Scalar> values, SemiringKind kind);
/// Circulant with t ⊗ c on every strictly upper entry.
Matrix make_upper_t_circulant(const Scalar& t, std::span<const Scalar> values, SemiringKind kind);
/// Circulant with s ⊗ c on every strictly lower entry.
Matrix make_lower_s_circulant(const Scalar& s, std::span<const Scalar> values, SemiringKind kind);

bool is_circulant(const Matrix& a);
bool is_upper_t_circulant(const Matrix& a, const Scalar& t);
bool is_lower_s_circulant(const Matrix& a, const Scalar& s);

/// a_ij ⊕ a_jk <= a_ik ⊕ a_jj for all i, j, k. Max-plus matrices only.
bool is_jones(const Matrix& a);
/// a_ij ⊗ a_jk <= a_ik ⊗ a_jj for all i, j, k. Deformations of such a
/// matrix commute; the ⊕ form alone does not guarantee that.
bool is_product_jones(const Matrix& a);
/// Matrix meeting both conditions: off-diagonal values come from `range`,
/// each diagonal entry dominates its row and column.
Matrix sample_jones(std::size_t dim, IntRange range, Rng& rng);
/// b_ij = a_ij + (alpha - 1) * max(a_ii, a_jj). Requires is_product_jones
/// and alpha in [0, 1].
Matrix deform(const Matrix& a, const mpq_class& alpha);

/// Linde-de la Puente matrix over min-plus: diagonal k <= 0, off-diagonal
/// entries drawn from [r, 2r], r >= 0.
Matrix sample_ldp(std::int64_t r, std::int64_t k, std::size_t dim, Rng& rng);
bool is_ldp(const Matrix& a, const Scalar& r, const Scalar& k);

bool commute_check(const Matrix& a, const Matrix& b);

namespace family {

/// p(base) with degree <= max_degree and integer coefficients.
struct PolyOf {
  Matrix base;
  unsigned max_degree = 2;
  IntRange coeffs;
};
struct Circulant {
  SemiringKind kind = SemiringKind::min_plus;
  std::size_t dim = 3;
  IntRange values;
};
struct UpperTCirculant {
  SemiringKind kind = SemiringKind::min_plus;
  std::size_t dim = 3;
  Scalar t;
  IntRange values;
};
struct LowerSCirculant {
  SemiringKind kind = SemiringKind::min_plus;
  std::size_t dim = 3;
  Scalar s;
  IntRange values;
};
/// Deformations base^(m / alpha_denominator), m uniform in [0, alpha_denominator].
struct JonesDeform {
  Matrix base;
  unsigned alpha_denominator = 4;
};
struct LindeDeLaPuente {
  std::size_t dim = 3;
  std::int64_t r = 0;
  std::int64_t k = 0;
};

}  // namespace family

/// A pairwise commuting subset of the matrix semigroup, given by how to
/// draw elements from it.
using FamilySpec = std::variant<family::PolyOf, family::Circulant, family::UpperTCirculant,
                                family::LowerSCirculant, family::JonesDeform,
                                family::LindeDeLaPuente>;

/// Throws std::invalid_argument when the spec violates its preconditions
/// (non-Jones base, r < 0, k > 0, empty ranges, ...).
void validate(const FamilySpec& spec);
SemiringKind family_kind(const FamilySpec& spec);
std::size_t family_dim(const FamilySpec& spec);
Matrix sample_family(const FamilySpec& spec, Rng& rng);

}  // namespace tropmarg
