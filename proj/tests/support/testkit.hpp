#pragma once

// Independent oracles and seeded property suites shared by the unit tests
// and the acceptance runner. Oracles here never call the library routine
// they check.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tropmarg/families.hpp"
#include "tropmarg/marginal.hpp"
#include "tropmarg/protocols.hpp"

namespace testkit {

using tropmarg::Matrix;
using tropmarg::Rng;
using tropmarg::Scalar;
using tropmarg::SemiringKind;

// ---- oracles --------------------------------------------------------------

/// Schoolbook product with the semiring's ⊕ spelled out per kind.
Matrix naive_mul(const Matrix& a, const Matrix& b);
Matrix naive_add(const Matrix& a, const Matrix& b);
Matrix naive_chain(const std::vector<Matrix>& chain);
/// Word value by direct substitution, no WordTemplate::evaluate.
Matrix naive_word(const tropmarg::WordTemplate& w, const std::vector<Matrix>& tuple);

Matrix random_int_matrix(SemiringKind kind, std::size_t dim, std::int64_t lo, std::int64_t hi,
                         Rng& rng);

// ---- suites ---------------------------------------------------------------

/// Cases run, cases failed, and a tally of outcome labels.
struct SuiteResult {
  explicit SuiteResult(std::string label) : name(std::move(label)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::map<std::string, std::size_t> tally;

  bool ok() const { return cases > 0 && failures == 0; }
  void fail(const std::string& what);
  std::string summary() const;
};

/// Every emitted tuple of every sampler verifies, `cases` seeds per sampler.
std::vector<SuiteResult> sampler_suites(std::size_t cases);
/// Key agreement for all protocols over all families.
std::vector<SuiteResult> key_agreement_suites(std::size_t seeds_per_pair);
/// Members drawn from one family commute, `cases` pairs per family.
std::vector<SuiteResult> commutation_suites(std::size_t cases);

/// One-sided residual equals the extreme solution found by grid search.
SuiteResult residuation_oracle(std::size_t matrices);
/// Solver verdicts against exhaustive search on small bipartite systems.
SuiteResult solver_oracle(std::size_t systems);
/// Solver verdicts and least X on sandwich systems of 2x2 matrices, some
/// off-diagonal entries pinned, against a grid search over X and Y.
SuiteResult sandwich_solver_oracle(std::size_t matrices);
/// cover_check agrees with the product equality for every X >= X* on a grid.
SuiteResult cover_check_oracle(std::size_t matrices);

/// Sidelnikov runs with polynomial secrets, attacked at the secrets' degree.
SuiteResult sidelnikov_attack(std::size_t runs);
/// Verdict tallies against the marginal protocols; nothing is asserted.
std::vector<SuiteResult> marginal_attack_rates(std::size_t runs);

/// Parameters for one protocol and family label (poly, circulant, upper-t,
/// lower-s, jones, ldp).
tropmarg::ProtocolParams make_params(const std::string& family, std::size_t dim,
                                     std::size_t blocks, std::uint64_t seed);
std::vector<std::string> family_labels();

}  // namespace testkit
