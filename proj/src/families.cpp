#include "tropmarg/families.hpp"

#include <algorithm>

namespace tropmarg {

namespace {

enum class Band { none, upper, lower };

Matrix shifted_circulant(std::span<const Scalar> values, SemiringKind kind, Band band,
                         const Scalar& shift) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("circulant needs at least one value");
  std::vector<Scalar> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Scalar c = values[(j + n - i) % n];
      if ((band == Band::upper && j > i) || (band == Band::lower && j < i)) c = otimes(shift, c);
      e.push_back(std::move(c));
    }
  }
  return Matrix(kind, n, std::move(e));
}

// First row with the band shift removed, or the matrix is not of that shape.
bool matches_shifted_circulant(const Matrix& a, Band band, const Scalar& shift) {
  if (!shift.is_finite()) throw std::invalid_argument("circulant shift must be finite");
  const std::size_t n = a.dim();
  std::vector<Scalar> first_row;
  first_row.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    first_row.push_back(band == Band::upper && j > 0 ? a(0, j) - shift : a(0, j));
  }
  return shifted_circulant(first_row, a.kind(), band, shift) == a;
}

std::vector<Scalar> random_values(std::size_t n, IntRange range, Rng& rng) {
  std::vector<Scalar> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(uniform_int(rng, range.lo, range.hi));
  return v;
}

void require_range(IntRange range) {
  if (range.lo > range.hi) throw std::invalid_argument("empty sampling range");
}

}  // namespace

Matrix make_circulant(std::span<const Scalar> values, SemiringKind kind) {
  return shifted_circulant(values, kind, Band::none, Scalar(0));
}

Matrix make_upper_t_circulant(const Scalar& t, std::span<const Scalar> values,
                              SemiringKind kind) {
  return shifted_circulant(values, kind, Band::upper, t);
}

Matrix make_lower_s_circulant(const Scalar& s, std::span<const Scalar> values,
                              SemiringKind kind) {
  return shifted_circulant(values, kind, Band::lower, s);
}

bool is_circulant(const Matrix& a) { return matches_shifted_circulant(a, Band::none, Scalar(0)); }

bool is_upper_t_circulant(const Matrix& a, const Scalar& t) {
  return matches_shifted_circulant(a, Band::upper, t);
}

bool is_lower_s_circulant(const Matrix& a, const Scalar& s) {
  return matches_shifted_circulant(a, Band::lower, s);
}

bool is_jones(const Matrix& a) {
  if (a.kind() != SemiringKind::max_plus) {
    throw std::invalid_argument("Jones matrices are defined over max-plus");
  }
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (std::max(a(i, j), a(j, k)) > std::max(a(i, k), a(j, j))) return false;
  return true;
}

bool is_product_jones(const Matrix& a) {
  if (a.kind() != SemiringKind::max_plus) {
    throw std::invalid_argument("Jones matrices are defined over max-plus");
  }
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (!a(i, j).is_finite() || !a(j, k).is_finite()) continue;  // left side is -inf
        if (a(i, j) + a(j, k) > a(i, k) + a(j, j)) return false;
      }
  return true;
}

Matrix sample_jones(std::size_t dim, IntRange range, Rng& rng) {
  require_range(range);
  if (dim == 0) throw std::invalid_argument("matrix dimension must be positive");
  std::vector<Scalar> e(dim * dim);
  std::int64_t top = range.lo;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (i == j) continue;
      const std::int64_t v = uniform_int(rng, range.lo, range.hi);
      top = std::max(top, v);
      e[i * dim + j] = Scalar(v);
    }
  }
  // a_jj >= a_ij + a_jk - a_ik over i, k != j covers the product condition;
  // a_jj >= top covers the sum condition and the i = k cases.
  const std::int64_t spread = range.hi - range.lo;
  for (std::size_t j = 0; j < dim; ++j) {
    std::int64_t floor = top;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        if (i != j && k != j && i != k) {
          floor = std::max(floor, (e[i * dim + j] + e[j * dim + k] - e[i * dim + k]).to_int64());
        }
    e[j * dim + j] = Scalar(uniform_int(rng, floor, floor + spread));
  }
  return Matrix(SemiringKind::max_plus, dim, std::move(e));
}

Matrix deform(const Matrix& a, const mpq_class& alpha) {
  if (alpha < 0 || alpha > 1) throw std::invalid_argument("deformation alpha must lie in [0, 1]");
  if (!is_product_jones(a)) throw std::invalid_argument("deformation requires a product-Jones matrix");
  const mpq_class exponent = alpha - 1;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (!a(i, i).is_finite()) throw std::invalid_argument("deformation needs a finite diagonal");
  }
  std::vector<Scalar> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar diag = std::max(a(i, i), a(j, j));
      e.push_back(otimes(a(i, j), diag * exponent));
    }
  }
  return Matrix(SemiringKind::max_plus, n, std::move(e));
}

Matrix sample_ldp(std::int64_t r, std::int64_t k, std::size_t dim, Rng& rng) {
  if (r < 0) throw std::invalid_argument("Linde-de la Puente matrices need r >= 0");
  if (k > 0) throw std::invalid_argument("Linde-de la Puente matrices need k <= 0");
  if (dim == 0) throw std::invalid_argument("matrix dimension must be positive");
  std::vector<Scalar> e;
  e.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      e.emplace_back(i == j ? k : uniform_int(rng, r, 2 * r));
  return Matrix(SemiringKind::min_plus, dim, std::move(e));
}

bool is_ldp(const Matrix& a, const Scalar& r, const Scalar& k) {
  if (!r.is_finite() || !k.is_finite() || r < Scalar(0) || k > Scalar(0)) {
    throw std::invalid_argument("Linde-de la Puente parameters need finite r >= 0, k <= 0");
  }
  if (a.kind() != SemiringKind::min_plus) return false;
  const Scalar two_r = r + r;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Scalar& v = a(i, j);
      if (i == j ? v != k : (v < r || v > two_r)) return false;
    }
  }
  return true;
}

bool commute_check(const Matrix& a, const Matrix& b) { return mat_mul(a, b) == mat_mul(b, a); }

void validate(const FamilySpec& spec) {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::PolyOf>) {
          require_range(f.coeffs);
        } else if constexpr (std::is_same_v<T, family::JonesDeform>) {
          if (!is_product_jones(f.base)) {
            throw std::invalid_argument("deformation base fails a_ij + a_jk <= a_ik + a_jj");
          }
          if (f.alpha_denominator == 0) throw std::invalid_argument("alpha denominator is zero");
        } else if constexpr (std::is_same_v<T, family::LindeDeLaPuente>) {
          if (f.r < 0) throw std::invalid_argument("Linde-de la Puente family needs r >= 0");
          if (f.k > 0) throw std::invalid_argument("Linde-de la Puente family needs k <= 0");
          if (f.dim == 0) throw std::invalid_argument("matrix dimension must be positive");
        } else {
          require_range(f.values);
          if (f.dim == 0) throw std::invalid_argument("matrix dimension must be positive");
          if constexpr (std::is_same_v<T, family::UpperTCirculant>) {
            if (!f.t.is_finite()) throw std::invalid_argument("t must be finite");
          } else if constexpr (std::is_same_v<T, family::LowerSCirculant>) {
            if (!f.s.is_finite()) throw std::invalid_argument("s must be finite");
          }
        }
      },
      spec);
}

SemiringKind family_kind(const FamilySpec& spec) {
  return std::visit(
      [](const auto& f) -> SemiringKind {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::PolyOf> || std::is_same_v<T, family::JonesDeform>) {
          return f.base.kind();
        } else if constexpr (std::is_same_v<T, family::LindeDeLaPuente>) {
          return SemiringKind::min_plus;
        } else {
          return f.kind;
        }
      },
      spec);
}

std::size_t family_dim(const FamilySpec& spec) {
  return std::visit(
      [](const auto& f) -> std::size_t {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::PolyOf> || std::is_same_v<T, family::JonesDeform>) {
          return f.base.dim();
        } else {
          return f.dim;
        }
      },
      spec);
}

Matrix sample_family(const FamilySpec& spec, Rng& rng) {
  validate(spec);
  return std::visit(
      [&rng](const auto& f) -> Matrix {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::PolyOf>) {
          return poly_eval(TropPolynomial(random_values(f.max_degree + 1, f.coeffs, rng)), f.base);
        } else if constexpr (std::is_same_v<T, family::Circulant>) {
          return make_circulant(random_values(f.dim, f.values, rng), f.kind);
        } else if constexpr (std::is_same_v<T, family::UpperTCirculant>) {
          return make_upper_t_circulant(f.t, random_values(f.dim, f.values, rng), f.kind);
        } else if constexpr (std::is_same_v<T, family::LowerSCirculant>) {
          return make_lower_s_circulant(f.s, random_values(f.dim, f.values, rng), f.kind);
        } else if constexpr (std::is_same_v<T, family::JonesDeform>) {
          const auto m = uniform_int(rng, 0, f.alpha_denominator);
          return deform(f.base, mpq_class(m, f.alpha_denominator));
        } else {
          return sample_ldp(f.r, f.k, f.dim, rng);
        }
      },
      spec);
}

}  // namespace tropmarg
