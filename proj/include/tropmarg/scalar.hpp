#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tropmarg {

/// Extended rational: an exact finite value, +inf or -inf.
///
/// Tropical multiplication is ordinary addition, so `operator+` is the
/// semiring product. Adding opposite infinities is undefined and throws.
class Scalar {
public:
  enum class Tag : std::uint8_t { finite, pos_inf, neg_inf };

  Scalar() = default;
  Scalar(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class value);

  static Scalar pos_infinity();
  static Scalar neg_infinity();
  /// Parses "12", "-3/4", "inf", "+inf" or "-inf".
  static Scalar parse(std::string_view text);

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::finite; }
  bool is_integer() const;
  /// Finite value; throws std::domain_error on infinities.
  const mpq_class& value() const;
  /// Exact integer value; throws unless finite, integral and within int64.
  std::int64_t to_int64() const;

  std::string to_string() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  /// Scales a finite value by an exact rational. Infinities are kept for
  /// positive factors, flipped for negative ones; zero times infinity throws.
  friend Scalar operator*(const Scalar& a, const mpq_class& factor);

private:
  Tag tag_ = Tag::finite;
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace tropmarg
