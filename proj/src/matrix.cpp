#include "tropmarg/matrix.hpp"

#include <algorithm>
#include <ostream>

namespace tropmarg {

std::string_view to_string(SemiringKind kind) {
  return kind == SemiringKind::min_plus ? "min-plus" : "max-plus";
}

SemiringKind parse_semiring(std::string_view text) {
  if (text == "min-plus") return SemiringKind::min_plus;
  if (text == "max-plus") return SemiringKind::max_plus;
  throw std::invalid_argument("unknown semiring: " + std::string(text));
}

SemiringKind dual(SemiringKind kind) {
  return kind == SemiringKind::min_plus ? SemiringKind::max_plus : SemiringKind::min_plus;
}

Scalar semiring_zero(SemiringKind kind) {
  return kind == SemiringKind::min_plus ? Scalar::pos_infinity() : Scalar::neg_infinity();
}

Scalar oplus(SemiringKind kind, const Scalar& a, const Scalar& b) {
  if (kind == SemiringKind::min_plus) return std::min(a, b);
  return std::max(a, b);
}

Matrix::Matrix(SemiringKind kind, std::size_t dim, std::vector<Scalar> entries)
    : kind_(kind), dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0) throw std::invalid_argument("matrix dimension must be positive");
  if (entries_.size() != dim_ * dim_) {
    throw DimensionMismatch("expected " + std::to_string(dim_ * dim_) + " entries, got " +
                            std::to_string(entries_.size()));
  }
  const Scalar neutral = semiring_zero(kind_);
  for (const Scalar& s : entries_) {
    if (!s.is_finite() && s != neutral) {
      throw std::invalid_argument("entry " + s.to_string() + " is not allowed in a " +
                                  std::string(to_string(kind_)) + " matrix");
    }
  }
}

Matrix::Matrix(SemiringKind kind, std::initializer_list<std::initializer_list<Scalar>> rows)
    : Matrix(kind, rows.size(), [&] {
        std::vector<Scalar> flat;
        flat.reserve(rows.size() * rows.size());
        for (const auto& row : rows) {
          if (row.size() != rows.size()) throw DimensionMismatch("matrix rows must be square");
          flat.insert(flat.end(), row.begin(), row.end());
        }
        return flat;
      }()) {}

Matrix Matrix::identity(SemiringKind kind, std::size_t dim) {
  std::vector<Scalar> e(dim * dim, semiring_zero(kind));
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = Scalar(0);
  return Matrix(kind, dim, std::move(e));
}

Matrix Matrix::zero(SemiringKind kind, std::size_t dim) {
  return Matrix(kind, dim, std::vector<Scalar>(dim * dim, semiring_zero(kind)));
}

Matrix Matrix::from_rows(SemiringKind kind, const std::vector<std::vector<Scalar>>& rows) {
  std::vector<Scalar> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw DimensionMismatch("matrix rows must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Matrix(kind, rows.size(), std::move(flat));
}

std::vector<std::vector<Scalar>> Matrix::rows() const {
  std::vector<std::vector<Scalar>> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    out[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
  }
  return out;
}

bool Matrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Scalar& s) { return s.is_finite(); });
}

Matrix Matrix::with_entry(std::size_t row, std::size_t col, Scalar value) const {
  std::vector<Scalar> e = entries_;
  e.at(row * dim_ + col) = std::move(value);
  return Matrix(kind_, dim_, std::move(e));
}

Matrix Matrix::transposed() const {
  std::vector<Scalar> e(entries_.size());
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) e[j * dim_ + i] = entries_[i * dim_ + j];
  return Matrix(kind_, dim_, std::move(e));
}

Matrix Matrix::negated() const {
  std::vector<Scalar> e;
  e.reserve(entries_.size());
  for (const Scalar& s : entries_) e.push_back(-s);
  return Matrix(dual(kind_), dim_, std::move(e));
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

void require_compatible(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("matrix dimensions differ: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
  if (a.kind() != b.kind()) throw DimensionMismatch("matrix semiring kinds differ");
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  require_compatible(a, b);
  std::vector<Scalar> e;
  e.reserve(a.entries().size());
  for (std::size_t idx = 0; idx < a.entries().size(); ++idx) {
    e.push_back(oplus(a.kind(), a.entries()[idx], b.entries()[idx]));
  }
  return Matrix(a.kind(), a.dim(), std::move(e));
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require_compatible(a, b);
  const std::size_t k = a.dim();
  const SemiringKind kind = a.kind();
  std::vector<Scalar> e;
  e.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Scalar acc = semiring_zero(kind);
      for (std::size_t l = 0; l < k; ++l) acc = oplus(kind, acc, otimes(a(i, l), b(l, j)));
      e.push_back(std::move(acc));
    }
  }
  return Matrix(kind, k, std::move(e));
}

Matrix mat_product(std::span<const Matrix> chain) {
  if (chain.empty()) throw std::invalid_argument("empty matrix product");
  Matrix acc = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) acc = mat_mul(acc, chain[i]);
  return acc;
}

Matrix mat_product(std::initializer_list<Matrix> chain) {
  return mat_product(std::span<const Matrix>(chain.begin(), chain.size()));
}

Matrix mat_pow(const Matrix& a, unsigned exponent) {
  Matrix result = Matrix::identity(a.kind(), a.dim());
  Matrix base = a;
  while (exponent > 0) {
    if (exponent & 1U) result = mat_mul(result, base);
    exponent >>= 1U;
    if (exponent > 0) base = mat_mul(base, base);
  }
  return result;
}

Matrix scalar_mul(const Scalar& c, const Matrix& a) {
  if (!c.is_finite() && c != semiring_zero(a.kind())) {
    throw std::invalid_argument("scalar " + c.to_string() + " is not in the matrix semiring");
  }
  std::vector<Scalar> e;
  e.reserve(a.entries().size());
  for (const Scalar& s : a.entries()) e.push_back(otimes(c, s));
  return Matrix(a.kind(), a.dim(), std::move(e));
}

bool entrywise_le(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
  for (std::size_t idx = 0; idx < a.entries().size(); ++idx) {
    if (a.entries()[idx] > b.entries()[idx]) return false;
  }
  return true;
}

TropPolynomial::TropPolynomial(std::vector<Scalar> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw std::invalid_argument("polynomial needs a coefficient");
}

Matrix poly_eval(const TropPolynomial& p, const Matrix& a) {
  const auto coeffs = p.coefficients();
  Matrix power = Matrix::identity(a.kind(), a.dim());
  Matrix result = scalar_mul(coeffs[0], power);
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    power = mat_mul(power, a);
    result = mat_add(result, scalar_mul(coeffs[i], power));
  }
  return result;
}

}  // namespace tropmarg
