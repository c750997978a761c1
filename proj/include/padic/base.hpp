#pragma once

#include <cstdint>

namespace padic {

/// Trial-division primality; intended for the small primes used as p.
bool is_prime(std::uint64_t n);

/// A radix b >= 2. Limited to 32 bits so digit arithmetic stays in a word.
class Base {
 public:
  explicit Base(std::uint64_t b);
  std::uint64_t value() const { return b_; }
  friend bool operator==(Base, Base) = default;

 private:
  std::uint64_t b_;
};

/// A base that is also prime; primality is checked once at construction.
class Prime {
 public:
  explicit Prime(std::uint64_t p);
  std::uint64_t value() const { return p_; }
  Base base() const { return Base(p_); }
  operator Base() const { return base(); }  // NOLINT
  friend bool operator==(Prime, Prime) = default;

 private:
  std::uint64_t p_;
};

}  // namespace padic
