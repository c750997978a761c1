#include "padic/base.hpp"

#include <string>

#include "padic/errors.hpp"

namespace padic {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t f = 3; f <= n / f; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

Base::Base(std::uint64_t b) : b_(b) {
  require(b >= 2, "base must be >= 2, got " + std::to_string(b));
  require(b <= UINT32_MAX, "base must fit 32 bits, got " + std::to_string(b));
}

Prime::Prime(std::uint64_t p) : p_(p) {
  require(p <= UINT32_MAX, "p must fit 32 bits, got " + std::to_string(p));
  require(is_prime(p), "p must be prime, got " + std::to_string(p));
}

}  // namespace padic
