#include "padic/natural.hpp"

#include <algorithm>
#include <cctype>

#include "padic/errors.hpp"

namespace padic {

Natural::Natural(const Integer& v) : v_(v) {
  if (sgn(v_) < 0) throw InternalError("Natural constructed from negative value " + v.get_str());
}

Natural Natural::from_string(std::string_view decimal) {
  require(!decimal.empty(), "empty integer literal");
  require(std::all_of(decimal.begin(), decimal.end(),
                      [](unsigned char c) { return std::isdigit(c) != 0; }),
          "not a nonnegative decimal integer: '" + std::string(decimal) + "'");
  return Natural(Integer(std::string(decimal), 10));
}

std::uint64_t Natural::to_u64() const {
  ensure(fits_u64(), "value does not fit 64 bits");
  return v_.get_ui();
}

std::size_t Natural::decimal_digits() const {
  if (is_zero()) return 1;
  return v_.get_str(10).size();
}

std::uint64_t Natural::mod(std::uint64_t modulus) const {
  ensure(modulus != 0, "modulus must be nonzero");
  return mpz_fdiv_ui(v_.get_mpz_t(), modulus);
}

Natural Natural::pow(unsigned long exponent) const {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), v_.get_mpz_t(), exponent);
  return Natural(r);
}

Natural operator-(const Natural& a, const Natural& b) {
  Integer r = a.v_ - b.v_;
  if (sgn(r) < 0) throw InternalError("Natural subtraction underflow");
  return Natural(r);
}

Natural operator/(const Natural& a, const Natural& b) {
  ensure(!b.is_zero(), "division by zero");
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return Natural(q);
}

Natural operator%(const Natural& a, const Natural& b) {
  ensure(!b.is_zero(), "division by zero");
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return Natural(r);
}

Natural power(std::uint64_t base, unsigned long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return Natural(r);
}

Natural root_ceil(const Natural& n, unsigned long k) {
  ensure(k >= 1, "root index must be positive");
  Integer r;
  const int exact = mpz_root(r.get_mpz_t(), n.value().get_mpz_t(), k);
  if (!exact) r += 1;
  return Natural(r);
}

}  // namespace padic
