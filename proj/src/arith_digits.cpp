#include "padic/arith_digits.hpp"

#include "padic/errors.hpp"

namespace padic {
namespace {

// Largest power b^w that fits 63 bits, used to peel GMP integers a word at a time.
struct WordChunk {
  std::uint64_t modulus;
  unsigned width;
};

WordChunk word_chunk(Base b) {
  const std::uint64_t bv = b.value();
  std::uint64_t c = bv;
  unsigned w = 1;
  while (c <= (UINT64_MAX >> 1) / bv) {
    c *= bv;
    ++w;
  }
  return {c, w};
}

// Visits the base-b digits of a Natural from least significant upwards,
// including the zero digits of inner chunks. Stops once the value is exhausted.
template <class Visit>
void for_each_digit(const Natural& n, Base b, Visit&& visit) {
  const std::uint64_t bv = b.value();
  if (n.fits_u64()) {
    for (std::uint64_t v = n.to_u64(); v != 0; v /= bv) visit(static_cast<std::uint32_t>(v % bv));
    return;
  }
  const WordChunk chunk = word_chunk(b);
  Integer rest = n.value();
  while (!rest.fits_ulong_p()) {
    std::uint64_t low = mpz_tdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), chunk.modulus);
    for (unsigned i = 0; i < chunk.width; ++i) {
      visit(static_cast<std::uint32_t>(low % bv));
      low /= bv;
    }
  }
  for (std::uint64_t v = rest.get_ui(); v != 0; v /= bv) visit(static_cast<std::uint32_t>(v % bv));
}

}  // namespace

Natural DigitVector::reconstruct() const {
  Integer acc = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    acc *= static_cast<unsigned long>(base.value());
    acc += static_cast<unsigned long>(*it);
  }
  return Natural(acc);
}

DigitVector digits(const Natural& n, Base b) {
  DigitVector out{{}, b};
  for_each_digit(n, b, [&](std::uint32_t d) { out.digits.push_back(d); });
  while (!out.digits.empty() && out.digits.back() == 0) out.digits.pop_back();
  return out;
}

DigitVector digits(std::uint64_t n, Base b) {
  DigitVector out{{}, b};
  for (; n != 0; n /= b.value()) out.digits.push_back(static_cast<std::uint32_t>(n % b.value()));
  return out;
}

std::uint64_t digit_sum(std::uint64_t n, Base b) {
  std::uint64_t s = 0;
  for (; n != 0; n /= b.value()) s += n % b.value();
  return s;
}

Natural digit_sum(const Natural& n, Base b) {
  if (n.fits_u64()) return Natural(digit_sum(n.to_u64(), b));
  std::uint64_t s = 0;
  for_each_digit(n, b, [&](std::uint32_t d) { s += d; });
  return Natural(s);
}

std::uint64_t truncated_digit_sum(std::uint64_t n, Base b, std::size_t lambda) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < lambda && n != 0; ++i, n /= b.value()) s += n % b.value();
  return s;
}

Natural truncated_digit_sum(const Natural& n, Base b, std::size_t lambda) {
  if (n.fits_u64()) return Natural(truncated_digit_sum(n.to_u64(), b, lambda));
  std::uint64_t s = 0;
  std::size_t i = 0;
  for_each_digit(n, b, [&](std::uint32_t d) {
    if (i++ < lambda) s += d;
  });
  return Natural(s);
}

std::uint64_t legendre_valuation_floors(std::uint64_t n, Prime p) {
  std::uint64_t e = 0;
  for (std::uint64_t q = n / p.value(); q != 0; q /= p.value()) e += q;
  return e;
}

Natural legendre_valuation_floors(const Natural& n, Prime p) {
  if (n.fits_u64()) return Natural(legendre_valuation_floors(n.to_u64(), p));
  Integer e = 0;
  Integer q = n.value();
  const unsigned long pv = static_cast<unsigned long>(p.value());
  for (;;) {
    mpz_fdiv_q_ui(q.get_mpz_t(), q.get_mpz_t(), pv);
    if (sgn(q) == 0) break;
    e += q;
  }
  return Natural(e);
}

std::uint64_t legendre_valuation_digits(std::uint64_t n, Prime p) {
  const std::uint64_t diff = n - digit_sum(n, p);
  ensure(diff % (p.value() - 1) == 0, "(p-1) must divide n - s_p(n)");
  return diff / (p.value() - 1);
}

Natural legendre_valuation_digits(const Natural& n, Prime p) {
  if (n.fits_u64()) return Natural(legendre_valuation_digits(n.to_u64(), p));
  const Natural diff = n - digit_sum(n, p);
  ensure(diff.mod(p.value() - 1) == 0, "(p-1) must divide n - s_p(n)");
  return diff / Natural(p.value() - 1);
}

std::uint64_t trailing_zeros_factorial(std::uint64_t n) { return legendre_valuation_floors(n, Prime(5)); }

Natural trailing_zeros_factorial(const Natural& n) { return legendre_valuation_floors(n, Prime(5)); }

DigitSumTable::DigitSumTable(Base b) : base_(b) {
  const std::uint64_t bv = b.value();
  constexpr std::uint64_t kTarget = 1u << 16;
  std::uint64_t c = bv;
  unsigned w = 1;
  while (c * bv <= 2 * kTarget) {
    c *= bv;
    ++w;
  }
  if (w < 2) return;  // no table; per-digit division
  width_ = w;
  chunk_ = c;
  table_.resize(c);
  for (std::uint64_t i = 1; i < c; ++i) {
    table_[i] = static_cast<std::uint16_t>(table_[i / bv] + i % bv);
  }
}

std::uint32_t DigitSumTable::operator()(std::uint64_t n) const {
  std::uint32_t s = 0;
  if (chunk_ == 0) {
    for (const std::uint64_t bv = base_.value(); n != 0; n /= bv) s += static_cast<std::uint32_t>(n % bv);
    return s;
  }
  for (; n != 0; n /= chunk_) s += table_[n % chunk_];
  return s;
}

std::uint32_t DigitSumTable::operator()(u128 n) const {
  std::uint32_t s = 0;
  const std::uint64_t step = chunk_ == 0 ? base_.value() : chunk_;
  while (n >> 64) {
    const auto low = static_cast<std::uint64_t>(n % step);
    n /= step;
    s += chunk_ == 0 ? static_cast<std::uint32_t>(low) : table_[low];
  }
  return s + (*this)(static_cast<std::uint64_t>(n));
}

}  // namespace padic
