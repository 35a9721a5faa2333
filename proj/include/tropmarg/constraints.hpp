#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropmarg/scalar.hpp"

namespace tropmarg {

/// Entry (row, col) of the unknown matrix number `tag` (0 = X, 1 = Y, or the
/// slot index of a chain).
struct VarId {
  std::size_t tag = 0;
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const VarId&, const VarId&) = default;
};

std::string to_string(const VarId& v);

/// u + v >= bound, or u + v == bound.
struct SumConstraint {
  VarId u;
  VarId v;
  Scalar bound;
};

/// Two-variable sum constraints plus a lower bound on every variable.
///
/// The constraint graph (variables joined by constraints) has to be
/// bipartite; negating one side turns every sum into a difference, which
/// is what makes the system a shortest-path problem.
class ConstraintSystem {
public:
  void add_sum_ge(VarId u, VarId v, Scalar bound);
  void add_sum_eq(VarId u, VarId v, Scalar bound);
  /// Replaces any earlier bound on `v`.
  void set_lower_bound(VarId v, Scalar bound);

  const std::vector<SumConstraint>& sum_ge() const { return sum_ge_; }
  const std::vector<SumConstraint>& sum_eq() const { return sum_eq_; }
  const std::map<VarId, Scalar>& lower_bounds() const { return lower_bounds_; }

private:
  std::vector<SumConstraint> sum_ge_;
  std::vector<SumConstraint> sum_eq_;
  std::map<VarId, Scalar> lower_bounds_;
};

using Assignment = std::map<VarId, mpq_class>;

/// Some feasible assignment, or nullopt when the system is infeasible.
/// Throws std::invalid_argument on malformed systems (infinite constants,
/// unbounded variables, odd cycles of constraints).
std::optional<Assignment> solve_feasible(const ConstraintSystem& system);

/// The canonical feasible assignment: on each bipartite side, the side
/// holding the smallest VarId takes its least feasible values, then the
/// other side takes its least values given those. This is the pointwise
/// least assignment whenever one exists.
std::optional<Assignment> solve_feasible_min(const ConstraintSystem& system);

/// Direct substitution check.
bool satisfies(const ConstraintSystem& system, const Assignment& assignment);

}  // namespace tropmarg
