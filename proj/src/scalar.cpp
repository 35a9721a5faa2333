#include "tropmarg/scalar.hpp"

#include <ostream>
#include <stdexcept>

namespace tropmarg {

Scalar::Scalar(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
}

Scalar Scalar::pos_infinity() {
  Scalar s;
  s.tag_ = Tag::pos_inf;
  return s;
}

Scalar Scalar::neg_infinity() {
  Scalar s;
  s.tag_ = Tag::neg_inf;
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return pos_infinity();
  if (text == "-inf") return neg_infinity();
  if (text.empty()) throw std::invalid_argument("empty scalar literal");

  // mpq_class accepts things like "0x1f" and " 3"; restrict to [-]digits[/digits].
  std::size_t pos = (text.front() == '-') ? 1 : 0;
  bool seen_digit = false;
  bool seen_slash = false;
  bool digit_after_slash = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (c == '/' && seen_digit && !seen_slash) {
      seen_slash = true;
    } else {
      throw std::invalid_argument("malformed scalar literal: " + std::string(text));
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash)) {
    throw std::invalid_argument("malformed scalar literal: " + std::string(text));
  }

  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("malformed scalar literal: " + std::string(text));
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Scalar(std::move(q));
}

bool Scalar::is_integer() const {
  return is_finite() && value_.get_den() == 1;
}

const mpq_class& Scalar::value() const {
  if (!is_finite()) throw std::domain_error("value() on an infinite scalar");
  return value_;
}

std::int64_t Scalar::to_int64() const {
  if (!is_integer()) throw std::domain_error("scalar is not an integer: " + to_string());
  const mpz_class& num = value_.get_num();
  if (!num.fits_slong_p()) throw std::overflow_error("integer exceeds int64: " + to_string());
  return num.get_si();
}

std::string Scalar::to_string() const {
  switch (tag_) {
    case Tag::pos_inf:
      return "inf";
    case Tag::neg_inf:
      return "-inf";
    case Tag::finite:
      break;
  }
  return value_.get_str(10);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.tag_ != b.tag_) return false;
  return !a.is_finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  auto rank = [](Scalar::Tag t) {
    switch (t) {
      case Scalar::Tag::neg_inf:
        return 0;
      case Scalar::Tag::finite:
        return 1;
      case Scalar::Tag::pos_inf:
        return 2;
    }
    return 1;
  };
  if (a.tag_ != b.tag_) return rank(a.tag_) <=> rank(b.tag_);
  if (!a.is_finite()) return std::strong_ordering::equal;
  const int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_finite() && b.is_finite()) return Scalar(mpq_class(a.value_ + b.value_));
  if (a.is_finite()) return b;
  if (b.is_finite()) return a;
  if (a.tag_ != b.tag_) throw std::domain_error("inf + (-inf) is undefined");
  return a;
}

Scalar operator-(const Scalar& a) {
  switch (a.tag_) {
    case Scalar::Tag::pos_inf:
      return Scalar::neg_infinity();
    case Scalar::Tag::neg_inf:
      return Scalar::pos_infinity();
    case Scalar::Tag::finite:
      break;
  }
  return Scalar(mpq_class(-a.value_));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const mpq_class& factor) {
  if (a.is_finite()) return Scalar(mpq_class(a.value_ * factor));
  const int sign = sgn(factor);
  if (sign == 0) throw std::domain_error("0 * inf is undefined");
  return sign > 0 ? a : -a;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace tropmarg
