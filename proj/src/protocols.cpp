#include "tropmarg/protocols.hpp"

#include <stdexcept>

namespace tropmarg {

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::sidelnikov:
      return "sidelnikov";
    case ProtocolKind::one_sided:
      return "one-sided";
    case ProtocolKind::sandwich:
      return "sandwich";
    case ProtocolKind::multiblock:
      return "multiblock";
  }
  return "sidelnikov";
}

ProtocolKind parse_protocol(std::string_view text) {
  for (ProtocolKind k : {ProtocolKind::sidelnikov, ProtocolKind::one_sided, ProtocolKind::sandwich,
                         ProtocolKind::multiblock}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown protocol: " + std::string(text));
}

void validate(const ProtocolParams& params) {
  if (params.dim == 0) throw std::invalid_argument("matrix dimension must be positive");
  if (params.blocks.empty()) throw std::invalid_argument("protocol needs at least one block");
  for (const Block& b : params.blocks) {
    if (b.w.kind() != params.kind || b.w.dim() != params.dim) {
      throw DimensionMismatch("public matrix does not match the declared semiring and dimension");
    }
    for (const FamilySpec* f : {&b.h, &b.r}) {
      validate(*f);
      if (family_kind(*f) != params.kind || family_dim(*f) != params.dim) {
        throw DimensionMismatch("family does not match the declared semiring and dimension");
      }
    }
  }
}

namespace {

// Non-multiblock protocols use the first block only.
std::size_t blocks_used(ProtocolKind kind, const ProtocolParams& params) {
  return kind == ProtocolKind::multiblock ? params.blocks.size() : 1;
}

const Tuple& chosen(const std::vector<MarginalSet>& sets, std::span<const std::size_t> choices,
                    std::size_t i) {
  return sets[i].tuples()[choices[i]];
}

// Left and right multipliers c_i, d_i wrapped around block i.
struct Wrappers {
  std::vector<Matrix> c;
  std::vector<Matrix> d;
};

Wrappers wrappers(ProtocolKind kind, std::size_t blocks, const ProtocolParams& params,
                  const std::vector<MarginalSet>& received, std::span<const std::size_t> choices) {
  const Matrix id = Matrix::identity(params.kind, params.dim);
  Wrappers out{std::vector<Matrix>(blocks, id), std::vector<Matrix>(blocks, id)};
  switch (kind) {
    case ProtocolKind::sidelnikov:
      break;
    case ProtocolKind::one_sided:
      out.c[0] = chosen(received, choices, 0)[0];
      out.d[0] = chosen(received, choices, 1)[0];
      break;
    case ProtocolKind::sandwich:
      out.c[0] = chosen(received, choices, 0)[0];
      out.d[0] = chosen(received, choices, 0)[1];
      break;
    case ProtocolKind::multiblock:
      out.c[0] = chosen(received, choices, 0)[0];
      for (std::size_t i = 1; i < blocks; ++i) {
        out.d[i - 1] = chosen(received, choices, i)[0];
        out.c[i] = chosen(received, choices, i)[1];
      }
      out.d[blocks - 1] = chosen(received, choices, blocks)[0];
      break;
  }
  return out;
}

std::vector<Matrix> messages(ProtocolKind kind, const ProtocolParams& params,
                             const PartyPlan& self, const Wrappers& wrap) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < self.p.size(); ++i) {
    const Matrix& w = params.blocks[i].w;
    if (kind == ProtocolKind::sandwich) {
      out.push_back(mat_product({self.p[i], wrap.c[i], w, wrap.d[i], self.q[i]}));
    } else {
      out.push_back(mat_product({wrap.c[i], self.p[i], w, self.q[i], wrap.d[i]}));
    }
  }
  return out;
}

Matrix derive_key(const PartyPlan& self, const std::vector<Matrix>& received) {
  std::vector<Matrix> chain;
  for (std::size_t i = 0; i < self.p.size(); ++i) {
    chain.push_back(self.p[i]);
    chain.push_back(received[i]);
    chain.push_back(self.q[i]);
  }
  return mat_product(chain);
}

void check_plan(ProtocolKind kind, const ProtocolParams& params, const PartyPlan& self,
                const PartyPlan& other, const char* who) {
  const std::size_t blocks = blocks_used(kind, params);
  const std::string name(who);
  if (self.p.size() != blocks || self.q.size() != blocks) {
    throw std::invalid_argument(name + " needs " + std::to_string(blocks) + " secret pairs");
  }
  for (std::size_t i = 0; i < blocks; ++i) {
    require_compatible(params.blocks[i].w, self.p[i]);
    require_compatible(params.blocks[i].w, self.q[i]);
  }
  const auto words = expected_words(kind, params.blocks, self.p, self.q);
  if (self.sets.size() != words.size()) {
    throw std::invalid_argument(name + " must publish " + std::to_string(words.size()) + " sets");
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!(self.sets[i].word() == words[i])) {
      throw std::invalid_argument(name + "'s set " + std::to_string(i + 1) +
                                  " is not built on the template of its secrets");
    }
    if (self.sets[i].size() == 0) throw std::invalid_argument(name + " published an empty set");
  }
  if (self.choices.size() != words.size()) {
    throw std::invalid_argument(name + " needs one choice per received set");
  }
  for (std::size_t i = 0; i < self.choices.size(); ++i) {
    if (self.choices[i] >= other.sets[i].size()) {
      throw std::invalid_argument(name + "'s choice " + std::to_string(i + 1) + " is out of range");
    }
  }
}

std::vector<std::size_t> draw_choices(const std::vector<MarginalSet>& received, Rng& rng) {
  std::vector<std::size_t> out;
  for (const MarginalSet& s : received) {
    out.push_back(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(s.size()) - 1)));
  }
  return out;
}

}  // namespace

std::vector<WordTemplate> expected_words(ProtocolKind kind, std::span<const Block> blocks,
                                         std::span<const Matrix> p, std::span<const Matrix> q) {
  std::vector<WordTemplate> out;
  switch (kind) {
    case ProtocolKind::sidelnikov:
      break;
    case ProtocolKind::one_sided:
      out.push_back(WordTemplate::right(p[0]));
      out.push_back(WordTemplate::left(q[0]));
      break;
    case ProtocolKind::sandwich:
      out.push_back(WordTemplate::five_factor(p[0], blocks[0].w, q[0]));
      break;
    case ProtocolKind::multiblock:
      out.push_back(WordTemplate::right(p[0]));
      for (std::size_t i = 1; i < p.size(); ++i) {
        out.push_back(WordTemplate::sandwich(mat_mul(q[i - 1], p[i])));
      }
      out.push_back(WordTemplate::left(q[p.size() - 1]));
      break;
  }
  return out;
}

ProtocolTranscript execute_protocol(ProtocolKind kind, const ProtocolParams& params,
                                    PartyPlan alice, PartyPlan bob) {
  validate(params);
  check_plan(kind, params, alice, bob, "Alice");
  check_plan(kind, params, bob, alice, "Bob");
  const std::size_t blocks = blocks_used(kind, params);

  std::vector<Matrix> u =
      messages(kind, params, alice, wrappers(kind, blocks, params, bob.sets, alice.choices));
  std::vector<Matrix> v =
      messages(kind, params, bob, wrappers(kind, blocks, params, alice.sets, bob.choices));
  Matrix key_a = derive_key(alice, v);
  Matrix key_b = derive_key(bob, u);
  const bool agreed = key_a == key_b;
  return ProtocolTranscript{kind,
                            params,
                            PartyRecord{std::move(alice), std::move(u), std::move(key_a)},
                            PartyRecord{std::move(bob), std::move(v), std::move(key_b)},
                            agreed};
}

PartyPlan draw_plan(ProtocolKind kind, const ProtocolParams& params, Rng& rng) {
  validate(params);
  const std::size_t blocks = blocks_used(kind, params);
  PartyPlan plan;
  for (std::size_t i = 0; i < blocks; ++i) {
    plan.p.push_back(sample_family(params.blocks[i].h, rng));
    plan.q.push_back(sample_family(params.blocks[i].r, rng));
  }
  const SamplerOptions& opts = params.sampler;
  switch (kind) {
    case ProtocolKind::sidelnikov:
      break;
    case ProtocolKind::one_sided:
      plan.sets.push_back(sample_right_marginal(plan.p[0], opts, rng));
      plan.sets.push_back(sample_left_marginal(plan.q[0], opts, rng));
      break;
    case ProtocolKind::sandwich:
      plan.sets.push_back(
          sample_five_factor_marginal(plan.p[0], params.blocks[0].w, plan.q[0], opts, rng));
      break;
    case ProtocolKind::multiblock:
      plan.sets.push_back(sample_right_marginal(plan.p[0], opts, rng));
      for (std::size_t i = 1; i < blocks; ++i) {
        plan.sets.push_back(sample_sandwich_marginal(mat_mul(plan.q[i - 1], plan.p[i]), opts, rng));
      }
      plan.sets.push_back(sample_left_marginal(plan.q[blocks - 1], opts, rng));
      break;
  }
  return plan;
}

ProtocolTranscript run_protocol(ProtocolKind kind, const ProtocolParams& params, Rng& rng) {
  PartyPlan alice = draw_plan(kind, params, rng);
  PartyPlan bob = draw_plan(kind, params, rng);
  alice.choices = draw_choices(bob.sets, rng);
  bob.choices = draw_choices(alice.sets, rng);
  return execute_protocol(kind, params, std::move(alice), std::move(bob));
}

ProtocolTranscript run_sidelnikov(const ProtocolParams& params, Rng& rng) {
  return run_protocol(ProtocolKind::sidelnikov, params, rng);
}

ProtocolTranscript run_protocol_one_sided(const ProtocolParams& params, Rng& rng) {
  return run_protocol(ProtocolKind::one_sided, params, rng);
}

ProtocolTranscript run_protocol_sandwich(const ProtocolParams& params, Rng& rng) {
  return run_protocol(ProtocolKind::sandwich, params, rng);
}

ProtocolTranscript run_protocol_multiblock(const ProtocolParams& params, Rng& rng) {
  return run_protocol(ProtocolKind::multiblock, params, rng);
}

// ---------------------------------------------------------------------------

std::string_view to_string(AttackVerdict verdict) {
  switch (verdict) {
    case AttackVerdict::recovered:
      return "recovered";
    case AttackVerdict::wrong_key:
      return "wrong-key";
    case AttackVerdict::no_decomposition:
      return "no-decomposition";
    case AttackVerdict::no_basis:
      return "no-basis";
  }
  return "no-basis";
}

std::vector<Matrix> power_basis(const Matrix& base, unsigned degree) {
  std::vector<Matrix> out{Matrix::identity(base.kind(), base.dim())};
  for (unsigned d = 1; d <= degree; ++d) out.push_back(mat_mul(out.back(), base));
  return out;
}

std::optional<Decomposition> attack_decomposition(const Matrix& w, const Matrix& u,
                                                  const Matrix& v,
                                                  std::span<const Matrix> left_basis,
                                                  std::span<const Matrix> right_basis) {
  if (left_basis.empty() || right_basis.empty()) throw std::invalid_argument("empty attack basis");
  require_compatible(w, u);
  require_compatible(w, v);
  // Work over min-plus; z for max-plus is the negation of the dual's z.
  const bool flip = w.kind() == SemiringKind::max_plus;
  auto to_min = [flip](const Matrix& m) { return flip ? m.negated() : m; };
  const Matrix mw = to_min(w);
  const Matrix mu = to_min(u);
  const Matrix mv = to_min(v);

  std::vector<std::vector<Scalar>> z(left_basis.size(), std::vector<Scalar>(right_basis.size()));
  std::optional<Matrix> recombined;
  std::optional<Matrix> candidate;
  for (std::size_t i = 0; i < left_basis.size(); ++i) {
    require_compatible(w, left_basis[i]);
    const Matrix a = to_min(left_basis[i]);
    for (std::size_t j = 0; j < right_basis.size(); ++j) {
      require_compatible(w, right_basis[j]);
      const Matrix b = to_min(right_basis[j]);
      const Matrix t = mat_product({a, mw, b});
      // Least z with z + t >= u entrywise; all-infinite t terms are dropped.
      std::optional<Scalar> zij;
      for (std::size_t idx = 0; idx < t.entries().size(); ++idx) {
        if (!t.entries()[idx].is_finite()) continue;
        Scalar need = mu.entries()[idx] - t.entries()[idx];
        if (!zij || need > *zij) zij = std::move(need);
      }
      const Scalar coeff = zij ? *zij : Scalar::pos_infinity();
      const Matrix term = scalar_mul(coeff, t);
      recombined = recombined ? mat_add(*recombined, term) : term;
      const Matrix key_term = scalar_mul(coeff, mat_product({a, mv, b}));
      candidate = candidate ? mat_add(*candidate, key_term) : key_term;
      z[i][j] = flip ? -coeff : coeff;
    }
  }
  if (*recombined != mu) return std::nullopt;
  return Decomposition{std::move(z), flip ? candidate->negated() : *candidate};
}

AttackReport attack_transcript(const ProtocolTranscript& transcript, unsigned degree) {
  AttackReport report;
  const std::size_t blocks = transcript.alice.messages.size();
  bool missing_basis = false;
  bool unsolved = false;
  std::vector<Matrix> pieces;
  for (std::size_t i = 0; i < blocks; ++i) {
    const Block& block = transcript.params.blocks[i];
    const auto* h = std::get_if<family::PolyOf>(&block.h);
    const auto* r = std::get_if<family::PolyOf>(&block.r);
    if (h == nullptr || r == nullptr) {
      missing_basis = true;
      report.blocks.emplace_back(std::nullopt);
      continue;
    }
    auto found = attack_decomposition(block.w, transcript.alice.messages[i],
                                      transcript.bob.messages[i], power_basis(h->base, degree),
                                      power_basis(r->base, degree));
    if (found) {
      pieces.push_back(found->candidate);
    } else {
      unsolved = true;
    }
    report.blocks.push_back(std::move(found));
  }
  if (missing_basis) {
    report.verdict = AttackVerdict::no_basis;
  } else if (unsolved) {
    report.verdict = AttackVerdict::no_decomposition;
  } else {
    report.candidate = mat_product(pieces);
    report.verdict = *report.candidate == transcript.alice.key ? AttackVerdict::recovered
                                                                : AttackVerdict::wrong_key;
  }
  return report;
}

}  // namespace tropmarg
