#pragma once

// Digit expansions, digit sums and factorial valuations.
//
// Two arithmetic paths: a machine-word path (std::uint64_t, plus a 128-bit
// path for DigitSumTable) used by the census loops, and an arbitrary-precision
// path on Natural used for witnesses. Natural overloads dispatch to the word
// path whenever the value fits.

#include <cstdint>
#include <vector>

#include "padic/base.hpp"
#include "padic/natural.hpp"

namespace padic {

using u128 = unsigned __int128;

/// Natural values <= this bound take the machine-word path.
inline constexpr std::uint64_t kWordPathLimit = UINT64_MAX;

/// Base-b digits, least significant first. Zero is the empty vector.
struct DigitVector {
  std::vector<std::uint32_t> digits;
  Base base{2};

  Natural reconstruct() const;
  friend bool operator==(const DigitVector&, const DigitVector&) = default;
};

DigitVector digits(const Natural& n, Base b);
DigitVector digits(std::uint64_t n, Base b);

std::uint64_t digit_sum(std::uint64_t n, Base b);
Natural digit_sum(const Natural& n, Base b);

/// Sum of the lambda lowest base-b digits of n.
std::uint64_t truncated_digit_sum(std::uint64_t n, Base b, std::size_t lambda);
Natural truncated_digit_sum(const Natural& n, Base b, std::size_t lambda);

/// e_p(n!) as sum_{i>=1} floor(n / p^i).
std::uint64_t legendre_valuation_floors(std::uint64_t n, Prime p);
Natural legendre_valuation_floors(const Natural& n, Prime p);

/// e_p(n!) as (n - s_p(n)) / (p - 1). The division is checked to be exact.
std::uint64_t legendre_valuation_digits(std::uint64_t n, Prime p);
Natural legendre_valuation_digits(const Natural& n, Prime p);

/// Number of trailing decimal zeros of n!, i.e. e_5(n!).
std::uint64_t trailing_zeros_factorial(std::uint64_t n);
Natural trailing_zeros_factorial(const Natural& n);

/// Chunked digit-sum evaluator for the word path.
///
/// Splits the input in radix b^w with b^w close to 2^16 and looks each chunk
/// up in a precomputed table. For bases too large to chunk (b^2 > 2^17) it
/// falls back to per-digit division. Immutable after construction, so one
/// instance can be shared between threads.
class DigitSumTable {
 public:
  explicit DigitSumTable(Base b);

  Base base() const { return base_; }
  unsigned chunk_width() const { return width_; }
  std::uint64_t chunk_modulus() const { return chunk_; }

  std::uint32_t operator()(std::uint64_t n) const;
  std::uint32_t operator()(u128 n) const;

 private:
  Base base_;
  unsigned width_ = 1;
  std::uint64_t chunk_ = 0;
  std::vector<std::uint16_t> table_;
};

}  // namespace padic
