#include "tropmarg/marginal.hpp"

#include <algorithm>
#include <limits>

namespace tropmarg {

namespace {

Matrix to_min_plus(const Matrix& a) {
  return a.kind() == SemiringKind::min_plus ? a : a.negated();
}

Matrix from_min_plus(const Matrix& m, SemiringKind kind) {
  return kind == SemiringKind::min_plus ? m : m.negated();
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.all_finite()) {
    throw std::invalid_argument(std::string(what) + " needs a matrix with finite entries");
  }
}

// Offset count available between lo and hi, as an int64 draw bound.
std::int64_t integer_room(const Scalar& lo, const Scalar& hi) {
  if (hi <= lo) return 0;
  const mpq_class diff = hi.value() - lo.value();
  mpz_class room;
  mpz_fdiv_q(room.get_mpz_t(), diff.get_num_mpz_t(), diff.get_den_mpz_t());
  if (!room.fits_slong_p()) return std::numeric_limits<std::int64_t>::max();
  return room.get_si();
}

Matrix random_lower_bounds(std::size_t dim, const SamplerOptions& opts, Rng& rng,
                           const std::vector<std::optional<std::int64_t>>& pinned_diagonal) {
  std::vector<Scalar> e;
  e.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (i == j && pinned_diagonal[i]) {
        e.emplace_back(*pinned_diagonal[i]);
      } else {
        e.emplace_back(uniform_int(rng, opts.l1, opts.l2));
      }
    }
  }
  return Matrix(SemiringKind::min_plus, dim, std::move(e));
}

void check_sampler_options(const SamplerOptions& opts) {
  if (opts.count == 0) throw std::invalid_argument("sampler count must be at least 1");
  if (opts.l1 > opts.l2) throw std::invalid_argument("sampler needs l1 <= l2");
  if (opts.retry_budget == 0) throw std::invalid_argument("retry budget must be positive");
}

// Draws until the set holds opts.count tuples or the budget runs out.
template <typename Draw>
void fill(MarginalSet& set, const SamplerOptions& opts, Draw&& draw) {
  const std::size_t budget = opts.retry_budget * opts.count;
  std::size_t attempts = 0;
  while (set.size() < opts.count) {
    if (attempts++ >= budget) {
      throw SamplerExhausted("sampler produced " + std::to_string(set.size()) + " of " +
                             std::to_string(opts.count) + " tuples in " +
                             std::to_string(budget) + " draws");
    }
    if (std::optional<Tuple> t = draw()) set.insert(std::move(*t));
  }
}

// Uniform integer offsets in [bound, top], entry by entry.
Matrix draw_between(const Matrix& bound, const Matrix& top, Rng& rng) {
  std::vector<Scalar> e;
  e.reserve(bound.entries().size());
  for (std::size_t idx = 0; idx < bound.entries().size(); ++idx) {
    const Scalar& lo = bound.entries()[idx];
    const std::int64_t room = integer_room(lo, top.entries()[idx]);
    e.push_back(room == 0 ? lo : lo + Scalar(uniform_int(rng, 0, room)));
  }
  return Matrix(bound.kind(), bound.dim(), std::move(e));
}

}  // namespace

// ---------------------------------------------------------------------------

WordTemplate::WordTemplate(std::vector<Matrix> constants,
                           std::vector<std::vector<Atom>> products, std::size_t additive_slots)
    : constants_(std::move(constants)),
      products_(std::move(products)),
      additive_slots_(additive_slots) {
  if (constants_.empty()) throw std::invalid_argument("word template needs a constant");
  for (const Matrix& c : constants_) require_compatible(constants_.front(), c);
  if (products_.empty() && additive_slots_ == 0) {
    throw std::invalid_argument("word template has no summands");
  }
  std::vector<std::size_t> slots;
  for (const auto& product : products_) {
    if (product.empty()) throw std::invalid_argument("empty product summand");
    for (const Atom& atom : product) {
      if (atom.type == Atom::Type::constant) {
        if (atom.index >= constants_.size()) {
          throw std::invalid_argument("constant index out of range");
        }
      } else {
        slots.push_back(atom.index);
      }
    }
  }
  std::sort(slots.begin(), slots.end());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] != i) {
      throw std::invalid_argument("multiplicative slots must be numbered 0..m-1, each used once");
    }
  }
  multiplicative_slots_ = slots.size();
}

WordTemplate WordTemplate::right(const Matrix& a) {
  return WordTemplate({a}, {{Atom::constant(0), Atom::slot(0)}});
}

WordTemplate WordTemplate::left(const Matrix& a) {
  return WordTemplate({a}, {{Atom::slot(0), Atom::constant(0)}});
}

WordTemplate WordTemplate::sandwich(const Matrix& a) {
  return WordTemplate({a}, {{Atom::slot(0), Atom::constant(0), Atom::slot(1)}});
}

WordTemplate WordTemplate::five_factor(const Matrix& a, const Matrix& b, const Matrix& c) {
  return WordTemplate({a, b, c}, {{Atom::constant(0), Atom::slot(0), Atom::constant(1),
                                   Atom::slot(1), Atom::constant(2)}});
}

WordTemplate WordTemplate::chain(std::span<const Matrix> factors) {
  if (factors.size() < 2) throw std::invalid_argument("chain needs at least two factors");
  std::vector<Atom> product;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) product.push_back(Atom::slot(i - 1));
    product.push_back(Atom::constant(i));
  }
  return WordTemplate(std::vector<Matrix>(factors.begin(), factors.end()), {product});
}

WordTemplate WordTemplate::additive(const Matrix& a) {
  return WordTemplate({a}, {{Atom::constant(0)}}, 1);
}

Matrix WordTemplate::evaluate(std::span<const Matrix> tuple) const {
  if (tuple.size() != arity()) {
    throw DimensionMismatch("tuple has " + std::to_string(tuple.size()) + " matrices, word takes " +
                            std::to_string(arity()));
  }
  for (const Matrix& m : tuple) require_compatible(constants_.front(), m);

  std::optional<Matrix> acc;
  auto accumulate = [&acc](Matrix term) {
    acc = acc ? mat_add(*acc, term) : std::move(term);
  };
  for (const auto& product : products_) {
    std::optional<Matrix> value;
    for (const Atom& atom : product) {
      const Matrix& factor =
          atom.type == Atom::Type::constant ? constants_[atom.index] : tuple[atom.index];
      value = value ? mat_mul(*value, factor) : factor;
    }
    accumulate(std::move(*value));
  }
  for (std::size_t k = 0; k < additive_slots_; ++k) {
    accumulate(tuple[multiplicative_slots_ + k]);
  }
  return *acc;
}

std::vector<Matrix> WordTemplate::neutral_tuple() const {
  std::vector<Matrix> t;
  t.reserve(arity());
  for (std::size_t i = 0; i < multiplicative_slots_; ++i) t.push_back(Matrix::identity(kind(), dim()));
  for (std::size_t i = 0; i < additive_slots_; ++i) t.push_back(Matrix::zero(kind(), dim()));
  return t;
}

Matrix WordTemplate::base_value() const { return evaluate(neutral_tuple()); }

bool verify_marginal(const WordTemplate& word, std::span<const Matrix> tuple) {
  return word.evaluate(tuple) == word.base_value();
}

bool MarginalSet::insert(Tuple tuple) {
  if (!verify_marginal(word_, tuple)) throw NotMarginal("tuple is not marginal for the word");
  if (contains(tuple)) return false;
  tuples_.push_back(std::move(tuple));
  return true;
}

bool MarginalSet::contains(const Tuple& tuple) const {
  return std::find(tuples_.begin(), tuples_.end(), tuple) != tuples_.end();
}

// ---------------------------------------------------------------------------

OneSidedResidual residual_right(const Matrix& a) {
  const Matrix m = to_min_plus(a);
  require_finite(m, "residuation");
  const std::size_t k = m.dim();
  std::vector<Scalar> e;
  e.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Scalar best = m(0, j) - m(0, i);
      for (std::size_t l = 1; l < k; ++l) best = std::max(best, m(l, j) - m(l, i));
      e.push_back(std::move(best));
    }
  }
  return {Side::right, from_min_plus(Matrix(SemiringKind::min_plus, k, std::move(e)), a.kind())};
}

OneSidedResidual residual_left(const Matrix& a) {
  const Matrix m = to_min_plus(a);
  require_finite(m, "residuation");
  const std::size_t k = m.dim();
  std::vector<Scalar> e;
  e.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Scalar best = m(i, 0) - m(j, 0);
      for (std::size_t l = 1; l < k; ++l) best = std::max(best, m(i, l) - m(j, l));
      e.push_back(std::move(best));
    }
  }
  return {Side::left, from_min_plus(Matrix(SemiringKind::min_plus, k, std::move(e)), a.kind())};
}

BoundTensor::BoundTensor(std::size_t dim, std::size_t order) : dim_(dim), order_(order) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < order; ++i) size *= dim;
  values_.resize(size);
}

std::size_t BoundTensor::offset(std::span<const std::size_t> index) const {
  if (index.size() != order_) throw std::out_of_range("tensor index has the wrong order");
  std::size_t off = 0;
  for (std::size_t i : index) {
    if (i >= dim_) throw std::out_of_range("tensor index out of range");
    off = off * dim_ + i;
  }
  return off;
}

TwoSidedResidual two_sided_residual(const Matrix& a) {
  const Matrix m = to_min_plus(a);
  require_finite(m, "residuation");
  const std::size_t k = m.dim();
  const bool negate = a.kind() == SemiringKind::max_plus;
  TwoSidedResidual out{a.kind(), BoundTensor(k, 4)};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = 0; q < k; ++q)
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t idx[] = {i, p, q, j};
          Scalar v = m(i, j) - m(p, q);
          out.bound.set(idx, negate ? -v : v);
        }
  return out;
}

FiveFactorResidual five_factor_residual(const Matrix& a, const Matrix& b, const Matrix& c) {
  require_compatible(a, b);
  require_compatible(b, c);
  const Matrix ma = to_min_plus(a);
  const Matrix mb = to_min_plus(b);
  const Matrix mc = to_min_plus(c);
  require_finite(ma, "residuation");
  require_finite(mb, "residuation");
  require_finite(mc, "residuation");
  const Matrix d = mat_product({ma, mb, mc});
  const std::size_t k = a.dim();
  const bool negate = a.kind() == SemiringKind::max_plus;

  FiveFactorResidual out{a.kind(), from_min_plus(d, a.kind()), BoundTensor(k, 4), {}, {}, {}};
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q)
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < k; ++s) {
          std::optional<Scalar> best;
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
              Scalar v = d(i, j) - ma(i, p) - mb(q, r) - mc(s, j);
              if (!best || v > *best) best = std::move(v);
            }
          const std::size_t idx[] = {p, q, r, s};
          if (p == q && r == s && *best == Scalar(0)) {
            out.tight.emplace(p, r);
            out.tight_x.insert(p);
            out.tight_y.insert(r);
          }
          out.bound.set(idx, negate ? -*best : *best);
        }
  return out;
}

ChainResidual n_factor_residual(std::span<const Matrix> chain) {
  if (chain.size() < 2) throw std::invalid_argument("chain needs at least two factors");
  std::vector<Matrix> m;
  m.reserve(chain.size());
  for (const Matrix& f : chain) {
    require_compatible(chain.front(), f);
    m.push_back(to_min_plus(f));
    require_finite(m.back(), "residuation");
  }
  const std::size_t n = chain.size() - 1;
  const std::size_t k = chain.front().dim();
  const Matrix d = mat_product(m);
  const bool negate = chain.front().kind() == SemiringKind::max_plus;

  ChainResidual out{chain.front().kind(), from_min_plus(d, chain.front().kind()),
                    BoundTensor(k, 2 * n)};
  std::vector<std::size_t> idx(2 * n, 0);
  bool done = false;
  while (!done) {
    // Interior factors a_{t+1}[q_t][p_{t+1}] do not depend on (i, j).
    Scalar interior(0);
    for (std::size_t t = 1; t < n; ++t) interior = interior + m[t](idx[2 * t - 1], idx[2 * t]);
    std::optional<Scalar> best;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        Scalar v = d(i, j) - m.front()(i, idx.front()) - interior - m.back()(idx.back(), j);
        if (!best || v > *best) best = std::move(v);
      }
    out.bound.set(idx, negate ? -*best : *best);

    done = true;
    for (std::size_t pos = idx.size(); pos-- > 0;) {
      if (++idx[pos] < k) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
  }
  return out;
}

Matrix additive_marginal_bound(const Matrix& a) { return a; }

std::set<std::pair<std::size_t, std::size_t>> diagonal_positions(std::size_t dim) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < dim; ++i) out.emplace(i, i);
  return out;
}

Matrix max_possible_matrix(const std::set<std::pair<std::size_t, std::size_t>>& pinned,
                           const Matrix& bound, const Scalar& l) {
  const std::size_t k = bound.dim();
  std::vector<Scalar> e;
  e.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      e.push_back(pinned.contains({i, j}) ? bound(i, j) : std::max(l, bound(i, j)));
  return Matrix(bound.kind(), k, std::move(e));
}

bool cover_check(const Matrix& a, const Matrix& x, Side side) {
  require_compatible(a, x);
  const Matrix ma = to_min_plus(a);
  const Matrix mx = to_min_plus(x);
  const Matrix bound = to_min_plus(side == Side::right ? residual_right(a).bound
                                                       : residual_left(a).bound);
  if (!entrywise_le(bound, mx)) throw std::invalid_argument("X does not satisfy the residual bound");

  const std::size_t k = a.dim();
  std::vector<bool> covered(k * k, false);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (mx(i, j) != bound(i, j)) continue;
      for (std::size_t l = 0; l < k; ++l) {
        if (side == Side::right) {
          if (bound(i, j) == ma(l, j) - ma(l, i)) covered[l * k + j] = true;
        } else {
          if (bound(i, j) == ma(i, l) - ma(j, l)) covered[i * k + l] = true;
        }
      }
    }
  }
  return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

// ---------------------------------------------------------------------------

namespace {

MarginalSet sample_one_sided(const Matrix& a, Side side, const SamplerOptions& opts, Rng& rng) {
  check_sampler_options(opts);
  const Matrix bound = to_min_plus(side == Side::right ? residual_right(a).bound
                                                      : residual_left(a).bound);
  const Matrix top = max_possible_matrix(diagonal_positions(a.dim()), bound, Scalar(opts.l));
  MarginalSet set(side == Side::right ? WordTemplate::right(a) : WordTemplate::left(a));
  fill(set, opts, [&]() -> std::optional<Tuple> {
    return Tuple{from_min_plus(draw_between(bound, top, rng), a.kind())};
  });
  return set;
}

}  // namespace

MarginalSet sample_right_marginal(const Matrix& a, const SamplerOptions& opts, Rng& rng) {
  return sample_one_sided(a, Side::right, opts, rng);
}

MarginalSet sample_left_marginal(const Matrix& a, const SamplerOptions& opts, Rng& rng) {
  return sample_one_sided(a, Side::left, opts, rng);
}

Matrix matrix_from_assignment(const Assignment& values, std::size_t tag, std::size_t dim,
                              SemiringKind kind) {
  std::vector<Scalar> e;
  e.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) e.emplace_back(values.at(VarId{tag, i, j}));
  return Matrix(kind, dim, std::move(e));
}

ConstraintSystem sandwich_constraints(const Matrix& a, const SandwichBounds& bounds) {
  if (a.kind() != SemiringKind::min_plus) {
    throw std::invalid_argument("sandwich constraints are built for min-plus matrices");
  }
  require_finite(a, "sandwich constraints");
  const std::size_t k = a.dim();
  ConstraintSystem sys;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = 0; q < k; ++q)
        for (std::size_t j = 0; j < k; ++j) {
          const VarId x{0, i, p};
          const VarId y{1, q, j};
          if (i == p && q == j) {
            sys.add_sum_eq(x, y, Scalar(0));
          } else {
            sys.add_sum_ge(x, y, a(i, j) - a(p, q));
          }
        }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      sys.set_lower_bound({0, i, j}, i == j ? Scalar(bounds.d) : bounds.x_lower(i, j));
      sys.set_lower_bound({1, i, j}, i == j ? Scalar(-bounds.d) : bounds.y_lower(i, j));
    }
  return sys;
}

MarginalSet sample_sandwich_marginal(const Matrix& a, const SamplerOptions& opts, Rng& rng) {
  check_sampler_options(opts);
  const Matrix m = to_min_plus(a);
  require_finite(m, "sandwich sampler");
  const std::size_t k = a.dim();
  MarginalSet set(WordTemplate::sandwich(a));
  fill(set, opts, [&]() -> std::optional<Tuple> {
    const std::int64_t d = uniform_int(rng, opts.l1, opts.l2);
    std::vector<std::optional<std::int64_t>> x_diag(k, d);
    std::vector<std::optional<std::int64_t>> y_diag(k, -d);
    SandwichBounds bounds{d, random_lower_bounds(k, opts, rng, x_diag),
                          random_lower_bounds(k, opts, rng, y_diag)};
    auto solution = solve_feasible_min(sandwich_constraints(m, bounds));
    if (!solution) return std::nullopt;
    return Tuple{from_min_plus(matrix_from_assignment(*solution, 0, k, SemiringKind::min_plus),
                               a.kind()),
                 from_min_plus(matrix_from_assignment(*solution, 1, k, SemiringKind::min_plus),
                               a.kind())};
  });
  return set;
}

ConstraintSystem five_factor_constraints(const FiveFactorResidual& residual,
                                         const FiveFactorBounds& bounds) {
  if (residual.kind != SemiringKind::min_plus) {
    throw std::invalid_argument("five-factor constraints are built for min-plus tables");
  }
  const std::size_t k = residual.bound.dim();
  ConstraintSystem sys;
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q)
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < k; ++s) {
          sys.add_sum_ge({0, p, q}, {1, r, s}, residual.bound.at({p, q, r, s}));
        }
  for (const auto& [p, r] : residual.tight) sys.add_sum_eq({0, p, p}, {1, r, r}, Scalar(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const bool pin_x = i == j && residual.tight_x.contains(i);
      const bool pin_y = i == j && residual.tight_y.contains(j);
      sys.set_lower_bound({0, i, j}, pin_x ? Scalar(bounds.h) : bounds.x_lower(i, j));
      sys.set_lower_bound({1, i, j}, pin_y ? Scalar(-bounds.h) : bounds.y_lower(i, j));
    }
  return sys;
}

namespace {

// One pass of the five-factor generator on min-plus inputs.
std::optional<std::pair<Matrix, Matrix>> draw_five_factor(const FiveFactorResidual& residual,
                                                          const SamplerOptions& opts, Rng& rng) {
  const std::size_t k = residual.bound.dim();
  const std::int64_t h = uniform_int(rng, opts.l1, opts.l2);
  std::vector<std::optional<std::int64_t>> x_diag(k);
  std::vector<std::optional<std::int64_t>> y_diag(k);
  for (std::size_t i : residual.tight_x) x_diag[i] = h;
  for (std::size_t j : residual.tight_y) y_diag[j] = -h;
  FiveFactorBounds bounds{h, random_lower_bounds(k, opts, rng, x_diag),
                          random_lower_bounds(k, opts, rng, y_diag)};
  auto solution = solve_feasible_min(five_factor_constraints(residual, bounds));
  if (!solution) return std::nullopt;
  return std::pair{matrix_from_assignment(*solution, 0, k, SemiringKind::min_plus),
                   matrix_from_assignment(*solution, 1, k, SemiringKind::min_plus)};
}

}  // namespace

MarginalSet sample_five_factor_marginal(const Matrix& a, const Matrix& b, const Matrix& c,
                                        const SamplerOptions& opts, Rng& rng) {
  check_sampler_options(opts);
  const FiveFactorResidual residual =
      five_factor_residual(to_min_plus(a), to_min_plus(b), to_min_plus(c));
  MarginalSet set(WordTemplate::five_factor(a, b, c));
  fill(set, opts, [&]() -> std::optional<Tuple> {
    auto drawn = draw_five_factor(residual, opts, rng);
    if (!drawn) return std::nullopt;
    return Tuple{from_min_plus(drawn->first, a.kind()), from_min_plus(drawn->second, a.kind())};
  });
  return set;
}

MarginalSet sample_chain_marginal(std::span<const Matrix> chain, const SamplerOptions& opts,
                                  Rng& rng) {
  check_sampler_options(opts);
  if (chain.size() < 2) throw std::invalid_argument("chain needs at least two factors");
  const SemiringKind kind = chain.front().kind();
  const std::size_t k = chain.front().dim();
  std::vector<Matrix> m;
  for (const Matrix& f : chain) m.push_back(to_min_plus(f));
  const std::size_t n = chain.size() - 1;
  MarginalSet set(WordTemplate::chain(chain));

  if (n == 1) {
    // x*_pq bounds; the diagonal positions with x*_uu = 0 are pinned and
    // cover every (i, j) through argmin_u a_iu + b_uj.
    const ChainResidual residual = n_factor_residual(m);
    std::vector<Scalar> lo;
    std::set<std::pair<std::size_t, std::size_t>> pinned;
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = 0; q < k; ++q) {
        lo.push_back(residual.bound.at({p, q}));
        if (p == q && lo.back() == Scalar(0)) pinned.emplace(p, p);
      }
    const Matrix bound(SemiringKind::min_plus, k, std::move(lo));
    const Matrix top = max_possible_matrix(pinned, bound, Scalar(opts.l));
    fill(set, opts, [&]() -> std::optional<Tuple> {
      return Tuple{from_min_plus(draw_between(bound, top, rng), kind)};
    });
    return set;
  }

  fill(set, opts, [&]() -> std::optional<Tuple> {
    std::vector<Matrix> slots(n, Matrix::identity(SemiringKind::min_plus, k));
    // Pass t draws (X, Y) for P X m_{t+1} Y S = P m_{t+1} S, where P ends
    // with the current slot t and slot t+1 is still I. Setting slot t to
    // slot_t X and slot t+1 to Y keeps the chain value pass by pass.
    for (std::size_t t = 0; t + 1 < n; ++t) {
      std::vector<Matrix> prefix{m[0]};
      for (std::size_t u = 0; u < t; ++u) {
        prefix.push_back(slots[u]);
        prefix.push_back(m[u + 1]);
      }
      prefix.push_back(slots[t]);
      std::vector<Matrix> suffix{m[t + 2]};
      for (std::size_t u = t + 2; u < n; ++u) {
        suffix.push_back(slots[u]);
        suffix.push_back(m[u + 1]);
      }
      const FiveFactorResidual residual =
          five_factor_residual(mat_product(prefix), m[t + 1], mat_product(suffix));
      auto drawn = draw_five_factor(residual, opts, rng);
      if (!drawn) return std::nullopt;
      slots[t] = mat_mul(slots[t], drawn->first);
      slots[t + 1] = std::move(drawn->second);
    }
    Tuple out;
    for (const Matrix& s : slots) out.push_back(from_min_plus(s, kind));
    return out;
  });
  return set;
}

MarginalSet sample_additive_marginal(const Matrix& a, const SamplerOptions& opts, Rng& rng) {
  check_sampler_options(opts);
  if (opts.l < 0) throw std::invalid_argument("additive sampler needs l >= 0");
  const Matrix m = to_min_plus(a);
  MarginalSet set(WordTemplate::additive(a));
  fill(set, opts, [&]() -> std::optional<Tuple> {
    std::vector<Scalar> e;
    e.reserve(m.entries().size());
    for (const Scalar& v : m.entries()) {
      e.push_back(v.is_finite() ? v + Scalar(uniform_int(rng, 0, opts.l)) : v);
    }
    return Tuple{from_min_plus(Matrix(SemiringKind::min_plus, m.dim(), std::move(e)), a.kind())};
  });
  return set;
}

}  // namespace tropmarg
