#include "tropmarg/golden.hpp"

#include <functional>
#include <sstream>

#include "tropmarg/fixtures.hpp"
#include "tropmarg/wire.hpp"

namespace tropmarg {

namespace {

using Body = std::function<std::string()>;

// A body returns an empty string on success, otherwise what went wrong.
void run(std::vector<GoldenCheck>& out, int group, std::string name, const Body& body) {
  GoldenCheck c{group, std::move(name), false, {}};
  try {
    c.detail = body();
    c.passed = c.detail.empty();
  } catch (const std::exception& e) {
    c.detail = std::string("exception: ") + e.what();
  }
  out.push_back(std::move(c));
}

std::string show(const Matrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

std::string expect_eq(const Matrix& got, const Matrix& want, const std::string& what) {
  if (got == want) return {};
  return what + ": got " + show(got) + ", want " + show(want);
}

void residuation_checks(std::vector<GoldenCheck>& out) {
  const auto ex = fixtures::residuation();
  run(out, 1, "right residual of the 3x3 example", [&] {
    return expect_eq(residual_right(ex.a).bound, ex.x_star, "X*");
  });
  run(out, 1, "max possible matrix with l = 100", [&] {
    return expect_eq(max_possible_matrix(diagonal_positions(3), ex.x_star, Scalar(ex.l)), ex.x_hat,
                     "X^");
  });
}

void marginality_checks(std::vector<GoldenCheck>& out) {
  const auto def = fixtures::definition();
  run(out, 2, "reference right marginals satisfy A C = A", [&]() -> std::string {
    for (const Matrix& c : def.right_marginals) {
      if (mat_mul(def.a, c) != def.a) return "A C differs from A for C = " + show(c);
      if (!verify_marginal(WordTemplate::right(def.a), std::vector<Matrix>{c})) {
        return "verify_marginal rejects " + show(c);
      }
    }
    return {};
  });
  run(out, 2, "reference additive marginal satisfies A + X = A", [&]() -> std::string {
    if (mat_add(def.a, def.additive) != def.a) return "A + X differs from A";
    if (!entrywise_le(additive_marginal_bound(def.a), def.additive)) return "X is below A";
    if (!verify_marginal(WordTemplate::additive(def.a), std::vector<Matrix>{def.additive})) {
      return "verify_marginal rejects X";
    }
    return {};
  });
  const auto res = fixtures::residuation();
  run(out, 2, "reference sampler outputs satisfy A X = A", [&]() -> std::string {
    for (const Matrix& x : res.outputs) {
      if (mat_mul(res.a, x) != res.a) return "A X differs from A for X = " + show(x);
      if (!entrywise_le(res.x_star, x) || !entrywise_le(x, res.x_hat)) {
        return "X = " + show(x) + " lies outside [X*, X^]";
      }
    }
    return {};
  });
}

void bilinear_checks(std::vector<GoldenCheck>& out) {
  const auto ex = fixtures::bilinear();
  run(out, 3, "two-sided residual reproduces the 16 reference constraints", [&]() -> std::string {
    const auto res = two_sided_residual(ex.a);
    for (const auto& c : ex.constraints) {
      if (res.bound.at({c.i, c.p, c.q, c.j}) != Scalar(c.bound)) {
        return "bound at x_" + std::to_string(c.i + 1) + std::to_string(c.p + 1) + ", y_" +
               std::to_string(c.q + 1) + std::to_string(c.j + 1) + " differs";
      }
    }
    return {};
  });
  run(out, 3, "constraint system lists the reference constraints in order", [&]() -> std::string {
    const SandwichBounds bounds{3, ex.x, ex.y};
    const ConstraintSystem sys = sandwich_constraints(ex.a, bounds);
    std::size_t ge = 0;
    std::size_t eq = 0;
    for (const auto& c : ex.constraints) {
      const auto& list = c.equality ? sys.sum_eq() : sys.sum_ge();
      std::size_t& at = c.equality ? eq : ge;
      if (at >= list.size()) return "system has too few constraints";
      const SumConstraint& s = list[at++];
      if (s.u != VarId{0, c.i, c.p} || s.v != VarId{1, c.q, c.j} || s.bound != Scalar(c.bound)) {
        return "constraint " + to_string(s.u) + " + " + to_string(s.v) + " differs from the reference";
      }
    }
    if (ge != sys.sum_ge().size() || eq != sys.sum_eq().size()) return "system has extra constraints";
    return {};
  });
  run(out, 3, "reference X, Y solve the bilinear system", [&]() -> std::string {
    const auto& x = ex.x;
    const auto& y = ex.y;
    for (const auto& c : ex.constraints) {
      const Scalar sum = x(c.i, c.p) + y(c.q, c.j);
      if (c.equality ? sum != Scalar(c.bound) : sum < Scalar(c.bound)) return "a constraint fails";
    }
    if (mat_product({x, ex.a, y}) != ex.a) return "X A Y differs from A";
    if (mat_mul(x, ex.a) == ex.a) return "X A equals A";
    if (mat_mul(ex.a, y) == ex.a) return "A Y equals A";
    return {};
  });
  run(out, 3, "least solution over the reference bounds is the reference pair", [&]() -> std::string {
    const auto sol = solve_feasible_min(sandwich_constraints(ex.a, {3, ex.x, ex.y}));
    if (!sol) return "system reported infeasible";
    std::string err = expect_eq(matrix_from_assignment(*sol, 0, 2, SemiringKind::min_plus), ex.x, "X");
    if (err.empty()) err = expect_eq(matrix_from_assignment(*sol, 1, 2, SemiringKind::min_plus), ex.y, "Y");
    return err;
  });
}

void five_factor_checks(std::vector<GoldenCheck>& out) {
  const auto ex = fixtures::five_factor();
  run(out, 4, "five-factor table matches the reference 9x9 block", [&]() -> std::string {
    const auto res = five_factor_residual(ex.a, ex.b, ex.c);
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t q = 0; q < 3; ++q)
        for (std::size_t r = 0; r < 3; ++r)
          for (std::size_t s = 0; s < 3; ++s)
            if (res.bound.at({p, q, r, s}) != Scalar(ex.table[3 * p + r][3 * q + s])) {
              return "entry (" + std::to_string(p + 1) + std::to_string(q + 1) +
                     std::to_string(r + 1) + std::to_string(s + 1) + ") differs";
            }
    if (res.tight != ex.tight) return "tight set differs";
    if (res.tight_x != ex.tight_x || res.tight_y != ex.tight_y) return "tight projections differ";
    return {};
  });
  run(out, 4, "reference X, Y keep the chain and break the seven products", [&]() -> std::string {
    const Matrix &a = ex.a, &b = ex.b, &c = ex.c, &x = ex.x, &y = ex.y;
    if (mat_product({a, x, b, y, c}) != mat_product({a, b, c})) return "A X B Y C differs";
    if (mat_mul(a, x) == a) return "A X equals A";
    if (mat_mul(x, b) == b) return "X B equals B";
    if (mat_mul(b, y) == b) return "B Y equals B";
    if (mat_mul(y, c) == c) return "Y C equals C";
    if (mat_product({a, x, b}) == mat_mul(a, b)) return "A X B equals A B";
    if (mat_product({x, b, y}) == b) return "X B Y equals B";
    if (mat_product({b, y, c}) == mat_mul(b, c)) return "B Y C equals B C";
    return {};
  });
}

void protocol_checks(std::vector<GoldenCheck>& out) {
  for (const char* name : {"sandwich-4x4", "multiblock-3x3"}) {
    run(out, 5, std::string(name) + " reproduces reference messages and key", [&]() -> std::string {
      auto ex = fixtures::protocol_example(name);
      const auto t = execute_protocol(ex.kind, ex.params, ex.alice, ex.bob);
      if (t.alice.messages != *ex.u) return "u differs from the reference";
      if (t.bob.messages != *ex.v) return "v differs from the reference";
      std::string err = expect_eq(t.alice.key, *ex.key, "Alice's key");
      if (err.empty()) err = expect_eq(t.bob.key, *ex.key, "Bob's key");
      return err;
    });
  }
  run(out, 6, "one-sided example: reference secrets are the stated polynomials", [&]() -> std::string {
    for (const auto& s : fixtures::one_sided_3x3().poly_secrets) {
      const std::vector<Scalar> coeffs(s.coeffs.begin(), s.coeffs.end());
      std::string err = expect_eq(poly_eval(TropPolynomial(coeffs), s.base), s.reference, "secret");
      if (!err.empty()) return err;
    }
    return {};
  });
  run(out, 6, "one-sided example: recomputed keys agree", [&]() -> std::string {
    auto ex = fixtures::one_sided_3x3();
    const auto t = execute_protocol(ex.kind, ex.params, ex.alice, ex.bob);
    if (!t.agreed) return "keys differ: " + show(t.alice.key) + " vs " + show(t.bob.key);
    const Matrix& w = ex.params.blocks[0].w;
    return expect_eq(t.alice.key, mat_product({ex.alice.p[0], ex.bob.p[0], w, ex.bob.q[0], ex.alice.q[0]}),
                     "key");
  });
}

void wire_checks(std::vector<GoldenCheck>& out) {
  run(out, 10, "interval encoding of the ten 2x2 matrices", [&]() -> std::string {
    const auto ex = fixtures::interval_encoding();
    const auto box = wire::encode_interval(ex.matrices);
    if (!box) return "box not detected";
    if (box->dump() != ex.encoded) return "encoded as " + box->dump();
    if (wire::decode_interval(*box, SemiringKind::min_plus) != ex.matrices) return "decode differs";
    return {};
  });
  run(out, 10, "delta encoding of the three 3x3 matrices", [&]() -> std::string {
    const auto ex = fixtures::delta_encoding();
    const auto j = wire::encode_delta(ex.matrices);
    if (j.dump() != ex.encoded) return "encoded as " + j.dump();
    if (wire::decode_delta(j, SemiringKind::min_plus) != ex.matrices) return "decode differs";
    return {};
  });
  run(out, 10, "fixture transcripts round-trip byte for byte", [&]() -> std::string {
    for (const auto& name : fixtures::protocol_example_names()) {
      auto ex = fixtures::protocol_example(name);
      const auto t = execute_protocol(ex.kind, ex.params, ex.alice, ex.bob);
      const std::string text = wire::dump(wire::to_json(t));
      const auto back = wire::transcript_from_json(wire::parse(text));
      if (wire::dump(wire::to_json(back)) != text) return name + " transcript changed";
      const std::string params = wire::dump(wire::to_json(ex.params));
      if (wire::dump(wire::to_json(wire::params_from_json(wire::parse(params)))) != params) {
        return name + " params changed";
      }
      for (const MarginalSet& s : t.alice.plan.sets) {
        const std::string word = wire::dump(wire::to_json(s.word()));
        if (wire::dump(wire::to_json(wire::word_from_json(wire::parse(word)))) != word) {
          return name + " word changed";
        }
        for (auto enc : {wire::SetEncoding::raw, wire::SetEncoding::delta, wire::SetEncoding::interval}) {
          const std::string set = wire::dump(wire::encode_tuples(wire::tuple_list(s), enc));
          const auto list = wire::decode_tuples(wire::parse(set));
          if (list.tuples != s.tuples()) return name + " set tuples changed";
          if (wire::dump(wire::encode_tuples(list, enc)) != set) return name + " set bytes changed";
        }
      }
    }
    return {};
  });
}

}  // namespace

std::vector<GoldenCheck> run_golden_checks() {
  std::vector<GoldenCheck> out;
  residuation_checks(out);
  marginality_checks(out);
  bilinear_checks(out);
  five_factor_checks(out);
  protocol_checks(out);
  wire_checks(out);
  return out;
}

}  // namespace tropmarg
