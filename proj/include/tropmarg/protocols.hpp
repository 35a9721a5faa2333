#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tropmarg/families.hpp"
#include "tropmarg/marginal.hpp"
#include "tropmarg/matrix.hpp"
#include "tropmarg/rng.hpp"

namespace tropmarg {

enum class ProtocolKind { sidelnikov, one_sided, sandwich, multiblock };

std::string_view to_string(ProtocolKind kind);
ProtocolKind parse_protocol(std::string_view text);

/// Public matrix of one block plus the commuting subsets the two secrets
/// of that block are drawn from.
struct Block {
  Matrix w;
  FamilySpec h;
  FamilySpec r;
};

struct ProtocolParams {
  SemiringKind kind = SemiringKind::min_plus;
  std::size_t dim = 3;
  std::vector<Block> blocks;
  SamplerOptions sampler;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument unless every block matches kind and dim.
void validate(const ProtocolParams& params);

/// Everything one party decides before messages are exchanged.
/// `choices[i]` indexes into the other party's i-th published set.
struct PartyPlan {
  std::vector<Matrix> p;
  std::vector<Matrix> q;
  std::vector<MarginalSet> sets;
  std::vector<std::size_t> choices;
};

struct PartyRecord {
  PartyPlan plan;
  /// u_i for Alice, v_i for Bob. Public.
  std::vector<Matrix> messages;
  Matrix key;
};

struct ProtocolTranscript {
  ProtocolKind kind = ProtocolKind::sidelnikov;
  ProtocolParams params;
  PartyRecord alice;
  PartyRecord bob;
  bool agreed = false;
};

/// Marginal templates a party with secrets (p, q) must publish.
std::vector<WordTemplate> expected_words(ProtocolKind kind, std::span<const Block> blocks,
                                         std::span<const Matrix> p, std::span<const Matrix> q);

/// Runs the exchange for fixed plans. Throws std::invalid_argument when a
/// plan does not fit the protocol (block counts, set templates, choices).
ProtocolTranscript execute_protocol(ProtocolKind kind, const ProtocolParams& params,
                                    PartyPlan alice, PartyPlan bob);

/// Draws a party's secrets and marginal sets; choices are left empty.
PartyPlan draw_plan(ProtocolKind kind, const ProtocolParams& params, Rng& rng);

/// Draws both plans, then both parties' tuple choices, from one engine.
ProtocolTranscript run_protocol(ProtocolKind kind, const ProtocolParams& params, Rng& rng);

ProtocolTranscript run_sidelnikov(const ProtocolParams& params, Rng& rng);
ProtocolTranscript run_protocol_one_sided(const ProtocolParams& params, Rng& rng);
ProtocolTranscript run_protocol_sandwich(const ProtocolParams& params, Rng& rng);
ProtocolTranscript run_protocol_multiblock(const ProtocolParams& params, Rng& rng);

// ---------------------------------------------------------------------------
// Decomposition attack
// ---------------------------------------------------------------------------

struct Decomposition {
  /// z[i][j] multiplies left[i] ⊗ W ⊗ right[j].
  std::vector<std::vector<Scalar>> z;
  Matrix candidate;
};

/// Principal solution of U = ⊕ z_ij ⊗ left_i ⊗ W ⊗ right_j. Returns nullopt
/// when it does not reproduce U. The candidate is ⊕ z_ij ⊗ left_i ⊗ V ⊗ right_j.
std::optional<Decomposition> attack_decomposition(const Matrix& w, const Matrix& u,
                                                  const Matrix& v,
                                                  std::span<const Matrix> left_basis,
                                                  std::span<const Matrix> right_basis);

/// {base^0, ..., base^degree}.
std::vector<Matrix> power_basis(const Matrix& base, unsigned degree);

enum class AttackVerdict { recovered, wrong_key, no_decomposition, no_basis };

std::string_view to_string(AttackVerdict verdict);

struct AttackReport {
  AttackVerdict verdict = AttackVerdict::no_basis;
  std::optional<Matrix> candidate;
  /// Per block, present where the decomposition solved.
  std::vector<std::optional<Decomposition>> blocks;
};

/// Attacks every block of a transcript with power bases of the PolyOf
/// family bases. Blocks whose families are not PolyOf give no_basis.
AttackReport attack_transcript(const ProtocolTranscript& transcript, unsigned degree);

}  // namespace tropmarg
