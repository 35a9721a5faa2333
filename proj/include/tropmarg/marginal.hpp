#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropmarg/constraints.hpp"
#include "tropmarg/matrix.hpp"
#include "tropmarg/rng.hpp"

namespace tropmarg {

// ---------------------------------------------------------------------------
// Word templates
// ---------------------------------------------------------------------------

/// One factor of a product summand: a fixed constant or a multiplicative slot.
struct Atom {
  enum class Type { constant, slot };
  Type type = Type::constant;
  std::size_t index = 0;

  static Atom constant(std::size_t i) { return {Type::constant, i}; }
  static Atom slot(std::size_t i) { return {Type::slot, i}; }
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// ⊕ of product summands over constants and multiplicative slots, plus
/// additive slots summed in on their own.
///
/// Multiplicative slots are numbered 0..m-1 and each appears exactly once.
/// Additive slots come after them in a tuple, so a tuple for a template
/// with m multiplicative and k additive slots has m + k matrices.
class WordTemplate {
public:
  WordTemplate(std::vector<Matrix> constants, std::vector<std::vector<Atom>> products,
               std::size_t additive_slots = 0);

  /// A ⊗ □
  static WordTemplate right(const Matrix& a);
  /// □ ⊗ A
  static WordTemplate left(const Matrix& a);
  /// □ ⊗ A ⊗ □
  static WordTemplate sandwich(const Matrix& a);
  /// A ⊗ □ ⊗ B ⊗ □ ⊗ C
  static WordTemplate five_factor(const Matrix& a, const Matrix& b, const Matrix& c);
  /// A_1 ⊗ □ ⊗ A_2 ⊗ ... ⊗ □ ⊗ A_{n+1}
  static WordTemplate chain(std::span<const Matrix> factors);
  /// A ⊕ ◯
  static WordTemplate additive(const Matrix& a);

  const std::vector<Matrix>& constants() const { return constants_; }
  const std::vector<std::vector<Atom>>& products() const { return products_; }
  std::size_t multiplicative_slots() const { return multiplicative_slots_; }
  std::size_t additive_slots() const { return additive_slots_; }
  std::size_t arity() const { return multiplicative_slots_ + additive_slots_; }
  SemiringKind kind() const { return constants_.front().kind(); }
  std::size_t dim() const { return constants_.front().dim(); }

  Matrix evaluate(std::span<const Matrix> tuple) const;
  /// Value with every multiplicative slot at I and every additive slot at the
  /// all-neutral matrix.
  Matrix base_value() const;
  std::vector<Matrix> neutral_tuple() const;

  friend bool operator==(const WordTemplate&, const WordTemplate&) = default;

private:
  std::vector<Matrix> constants_;
  std::vector<std::vector<Atom>> products_;
  std::size_t multiplicative_slots_ = 0;
  std::size_t additive_slots_ = 0;
};

using Tuple = std::vector<Matrix>;

/// True iff substituting the tuple leaves the word's value unchanged.
/// Throws DimensionMismatch on arity, dimension or kind mismatch.
bool verify_marginal(const WordTemplate& word, std::span<const Matrix> tuple);

class NotMarginal : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Word plus distinct tuples, each verified on insertion.
class MarginalSet {
public:
  explicit MarginalSet(WordTemplate word) : word_(std::move(word)) {}

  /// Throws NotMarginal for a tuple that does not verify. Returns false when
  /// the tuple is already present.
  bool insert(Tuple tuple);

  const WordTemplate& word() const { return word_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool contains(const Tuple& tuple) const;

private:
  WordTemplate word_;
  std::vector<Tuple> tuples_;
};

// ---------------------------------------------------------------------------
// Residuation tables
// ---------------------------------------------------------------------------
//
// The formulas are stated for min-plus, where every solution is bounded below
// by the table. A max-plus input is handled through the negation duality; the
// table then keeps the max-plus kind and is an upper bound.

class SamplerExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Side { right, left };

struct OneSidedResidual {
  Side side = Side::right;
  /// right: x*_ij = max_l (a_lj - a_li);  left: x*_ij = max_l (a_il - a_jl).
  Matrix bound;
};

OneSidedResidual residual_right(const Matrix& a);
OneSidedResidual residual_left(const Matrix& a);

/// Dense table indexed by `order` indices, each in [0, dim).
class BoundTensor {
public:
  BoundTensor(std::size_t dim, std::size_t order);

  std::size_t dim() const { return dim_; }
  std::size_t order() const { return order_; }
  const Scalar& at(std::span<const std::size_t> index) const { return values_[offset(index)]; }
  const Scalar& at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  void set(std::span<const std::size_t> index, Scalar value) {
    values_[offset(index)] = std::move(value);
  }
  std::span<const Scalar> values() const { return values_; }

  friend bool operator==(const BoundTensor&, const BoundTensor&) = default;

private:
  std::size_t offset(std::span<const std::size_t> index) const;

  std::size_t dim_;
  std::size_t order_;
  std::vector<Scalar> values_;
};

/// For X ⊗ A ⊗ Y = A: x_ip + y_qj >= a_ij - a_pq, stored at (i, p, q, j).
struct TwoSidedResidual {
  SemiringKind kind = SemiringKind::min_plus;
  BoundTensor bound{1, 4};
};

TwoSidedResidual two_sided_residual(const Matrix& a);

/// For A ⊗ X ⊗ B ⊗ Y ⊗ C = A ⊗ B ⊗ C: x_pq + y_rs >= x*_pqrs, stored at
/// (p, q, r, s). `tight` lists the (p, r) with x*_pprr = 0, and
/// `tight_x` / `tight_y` their projections (all 0-based).
struct FiveFactorResidual {
  SemiringKind kind = SemiringKind::min_plus;
  Matrix product;
  BoundTensor bound{1, 4};
  std::set<std::pair<std::size_t, std::size_t>> tight;
  std::set<std::size_t> tight_x;
  std::set<std::size_t> tight_y;
};

FiveFactorResidual five_factor_residual(const Matrix& a, const Matrix& b, const Matrix& c);

/// Chain A_1 X_1 A_2 ... X_n A_{n+1}: sum_k x_{k, p_k q_k} >= x*_{p_1 q_1 ... p_n q_n}.
struct ChainResidual {
  SemiringKind kind = SemiringKind::min_plus;
  Matrix product;
  BoundTensor bound{1, 2};
};

ChainResidual n_factor_residual(std::span<const Matrix> chain);

/// x_ij >= a_ij (min-plus) is necessary and sufficient for A ⊕ X = A.
Matrix additive_marginal_bound(const Matrix& a);

/// Checks that the entries where X meets X* cover the full index grid.
/// Throws std::invalid_argument when X does not satisfy the bound.
bool cover_check(const Matrix& a, const Matrix& x, Side side);

/// p_ij = x*_ij on `pinned`, max(l, x*_ij) elsewhere (indices 0-based).
Matrix max_possible_matrix(const std::set<std::pair<std::size_t, std::size_t>>& pinned,
                           const Matrix& bound, const Scalar& l);
std::set<std::pair<std::size_t, std::size_t>> diagonal_positions(std::size_t dim);

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

/// Draws allowed per requested tuple before a sampler gives up.
inline constexpr std::size_t kDefaultRetryBudget = 64;

/// Integer sampling knobs. For max-plus inputs they apply to the min-plus dual.
struct SamplerOptions {
  std::size_t count = 3;
  std::int64_t l = 100;
  std::int64_t l1 = -100;
  std::int64_t l2 = 100;
  std::size_t retry_budget = kDefaultRetryBudget;
};

/// Uniform integer offsets between X* and X̂ with the diagonal pinned.
MarginalSet sample_right_marginal(const Matrix& a, const SamplerOptions& opts, Rng& rng);
MarginalSet sample_left_marginal(const Matrix& a, const SamplerOptions& opts, Rng& rng);

/// Lower bounds drawn for one pass of the sandwich generator.
struct SandwichBounds {
  std::int64_t d = 0;
  Matrix x_lower;
  Matrix y_lower;
};

/// All x_ip + y_qj >= a_ij - a_pq, x_ii + y_jj = 0 and the lower bounds.
/// Variables are tag 0 (X) and tag 1 (Y). Min-plus, finite A.
ConstraintSystem sandwich_constraints(const Matrix& a, const SandwichBounds& bounds);
MarginalSet sample_sandwich_marginal(const Matrix& a, const SamplerOptions& opts, Rng& rng);

struct FiveFactorBounds {
  std::int64_t h = 0;
  Matrix x_lower;
  Matrix y_lower;
};

ConstraintSystem five_factor_constraints(const FiveFactorResidual& residual,
                                         const FiveFactorBounds& bounds);
MarginalSet sample_five_factor_marginal(const Matrix& a, const Matrix& b, const Matrix& c,
                                        const SamplerOptions& opts, Rng& rng);

/// n-slot chains, filled by repeated two-slot passes over adjacent slot pairs.
MarginalSet sample_chain_marginal(std::span<const Matrix> chain, const SamplerOptions& opts,
                                  Rng& rng);

/// X = A plus non-negative integer offsets up to l (min-plus direction).
MarginalSet sample_additive_marginal(const Matrix& a, const SamplerOptions& opts, Rng& rng);

/// Builds a matrix from a solved assignment for the given tag.
Matrix matrix_from_assignment(const Assignment& values, std::size_t tag, std::size_t dim,
                              SemiringKind kind);

}  // namespace tropmarg
