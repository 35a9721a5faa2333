#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropmarg/marginal.hpp"
#include "tropmarg/matrix.hpp"
#include "tropmarg/protocols.hpp"

// Worked instances with their reference values. All matrices are min-plus.
namespace tropmarg::fixtures {

Matrix mp(std::initializer_list<std::initializer_list<Scalar>> rows);

struct ResiduationExample {
  Matrix a;
  Matrix x_star;
  std::int64_t l = 100;
  Matrix x_hat;
  /// Reference sampler outputs; each satisfies A ⊗ X = A.
  std::vector<Matrix> outputs;
};
ResiduationExample residuation();

struct DefinitionExample {
  Matrix a;
  std::vector<Matrix> right_marginals;
  Matrix additive;
};
DefinitionExample definition();

/// One reference constraint x_{ip} + y_{qj} >= bound (0-based), or = when tight.
struct BilinearConstraint {
  std::size_t i, p, q, j;
  std::int64_t bound;
  bool equality;
};

struct BilinearExample {
  Matrix a;
  std::vector<BilinearConstraint> constraints;
  Matrix x;
  Matrix y;
};
BilinearExample bilinear();

struct FiveFactorExample {
  Matrix a, b, c;
  /// Row 3p + r, column 3q + s holds x*_{pqrs}.
  std::vector<std::vector<std::int64_t>> table;
  std::set<std::pair<std::size_t, std::size_t>> tight;
  std::set<std::size_t> tight_x;
  std::set<std::size_t> tight_y;
  Matrix x;
  Matrix y;
};
FiveFactorExample five_factor();

struct IntervalExample {
  std::vector<Matrix> matrices;
  std::string encoded;
};
IntervalExample interval_encoding();

struct DeltaExample {
  std::vector<Matrix> matrices;
  std::string encoded;
};
DeltaExample delta_encoding();

/// Reference secret next to the polynomial it was computed from.
struct PolySecret {
  std::vector<std::int64_t> coeffs;
  Matrix base;
  Matrix reference;
};

struct ProtocolExample {
  std::string name;
  ProtocolKind kind = ProtocolKind::sandwich;
  ProtocolParams params;
  PartyPlan alice;
  PartyPlan bob;
  std::vector<PolySecret> poly_secrets;
  /// Reference values; absent where they are known to be inconsistent.
  std::optional<std::vector<Matrix>> u;
  std::optional<std::vector<Matrix>> v;
  std::optional<Matrix> key;
};

ProtocolExample one_sided_3x3();
ProtocolExample sandwich_4x4();
ProtocolExample multiblock_3x3();

std::vector<std::string> protocol_example_names();
/// Throws std::invalid_argument for an unknown name.
ProtocolExample protocol_example(std::string_view name);

}  // namespace tropmarg::fixtures
