#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace padic {

/// Signed exact integer (polynomial coefficients, M offsets).
using Integer = mpz_class;

/// Arbitrary-precision nonnegative integer.
///
/// Thin value wrapper over a GMP integer that keeps the sign invariant:
/// subtraction that would go negative throws InternalError.
class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t v) : v_(static_cast<unsigned long>(v)) {}  // NOLINT: implicit by design
  explicit Natural(const Integer& v);

  /// Parses a plain decimal string (digits only). Throws ParameterError.
  static Natural from_string(std::string_view decimal);

  std::string to_string() const { return v_.get_str(10); }
  const Integer& value() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool fits_u64() const { return v_.fits_ulong_p(); }
  /// Requires fits_u64().
  std::uint64_t to_u64() const;
  std::size_t decimal_digits() const;

  std::uint64_t mod(std::uint64_t modulus) const;
  Natural pow(unsigned long exponent) const;

  Natural& operator+=(const Natural& o) {
    v_ += o.v_;
    return *this;
  }
  Natural& operator*=(const Natural& o) {
    v_ *= o.v_;
    return *this;
  }

  friend Natural operator+(const Natural& a, const Natural& b) { return Natural(Integer(a.v_ + b.v_)); }
  friend Natural operator-(const Natural& a, const Natural& b);
  friend Natural operator*(const Natural& a, const Natural& b) { return Natural(Integer(a.v_ * b.v_)); }
  /// Floor division; b must be nonzero.
  friend Natural operator/(const Natural& a, const Natural& b);
  friend Natural operator%(const Natural& a, const Natural& b);

  friend bool operator==(const Natural& a, const Natural& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Integer v_;
};

/// p^e as an exact integer.
Natural power(std::uint64_t base, unsigned long exponent);

/// Smallest r with r^k >= n (exact integer root ceiling), k >= 1.
Natural root_ceil(const Natural& n, unsigned long k);

}  // namespace padic
