#include "padic/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "padic/arith_digits.hpp"
#include "padic/errors.hpp"
#include "padic/natural.hpp"
#include "parallel.hpp"

namespace padic {
namespace {

// Odd-only segment: 256 KiB of flags covers 2^19 integers.
constexpr std::uint64_t kSegmentBytes = std::uint64_t{1} << 18;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

std::vector<std::uint32_t> small_odd_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 3) return out;
  std::vector<char> composite(limit + 1, 0);
  for (std::uint64_t i = 3; i <= limit; i += 2) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += 2 * i) composite[j] = 1;
  }
  return out;
}

// Largest n with n^h representable in the given number of bits.
template <class Word>
std::uint64_t max_base_for_power(unsigned h) {
  if (h == 1) return UINT64_MAX;
  const Natural limit = power(2, sizeof(Word) * 8) - Natural(1);
  Natural r = root_ceil(limit, h);
  if (r.pow(h) > limit) r = r - Natural(1);
  return r.fits_u64() ? r.to_u64() : UINT64_MAX;
}

std::uint64_t parse_env(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  require(end != nullptr && *end == '\0', std::string(name) + " must be a nonnegative integer");
  return v;
}

std::uint64_t first_in_class(std::uint64_t lo, std::uint64_t a, std::uint64_t d) {
  const std::uint64_t r = lo % d;
  return lo + (a + d - r) % d;
}

}  // namespace

PowerResidueEvaluator::PowerResidueEvaluator(const ProblemParams& params)
    : params_(params),
      table_(params.p().base()),
      word_max_(max_base_for_power<std::uint64_t>(params.h())),
      wide_max_(max_base_for_power<u128>(params.h())) {}

std::uint64_t PowerResidueEvaluator::operator()(std::uint64_t n) const {
  const std::uint64_t pm1 = params_.p().value() - 1;
  const std::uint64_t m = params_.m();
  if (n <= word_max_) {
    std::uint64_t big = 1;
    for (unsigned i = 0; i < params_.h(); ++i) big *= n;
    return ((big - table_(big)) / pm1) % m;
  }
  if (n <= wide_max_) {
    u128 big = 1;
    for (unsigned i = 0; i < params_.h(); ++i) big *= n;
    const u128 val = (big - table_(big)) / pm1;
    return static_cast<std::uint64_t>(val % m);
  }
  return legendre_valuation_digits(Natural(n).pow(params_.h()), params_.p()).mod(m);
}

ProblemParams::ProblemParams(std::uint64_t p, unsigned h, std::uint64_t m, std::uint64_t d,
                             std::uint64_t a)
    : p_(p), h_(h), m_(m), d_(d), a_(a) {
  require(h >= 1, "h must be >= 1");
  require(m >= 1, "m must be >= 1");
  require(d >= 1, "d must be >= 1");
  require(a < d, "a must satisfy 0 <= a < d, got a=" + std::to_string(a) + " d=" + std::to_string(d));
  require(m <= UINT32_MAX && d <= UINT32_MAX, "m and d must fit 32 bits");
}

ResourceLimits ResourceLimits::from_env() {
  ResourceLimits l;
  l.max_x = parse_env("PADIC_MAX_X", l.max_x);
  l.max_memory_bytes = parse_env("PADIC_MAX_MEMORY", l.max_memory_bytes);
  return l;
}

void ResourceLimits::check_x(std::uint64_t x, const char* what) const {
  if (x > max_x) {
    throw ResourceError(std::string(what) + ": x=" + std::to_string(x) + " exceeds the cap " +
                        std::to_string(max_x) + " (PADIC_MAX_X)");
  }
}

void ResourceLimits::check_memory(std::uint64_t bytes, const char* what) const {
  if (bytes > max_memory_bytes) {
    throw ResourceError(std::string(what) + ": needs ~" + std::to_string(bytes) +
                        " bytes, cap is " + std::to_string(max_memory_bytes) + " (PADIC_MAX_MEMORY)");
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_range(std::uint64_t lo,
                                                                     std::uint64_t hi,
                                                                     unsigned parts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (hi <= lo) return out;
  parts = std::max(parts, 1u);
  const std::uint64_t len = hi - lo;
  const std::uint64_t n = std::min<std::uint64_t>(parts, len);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t b = lo + static_cast<std::uint64_t>((static_cast<u128>(len) * i) / n);
    const std::uint64_t e = lo + static_cast<std::uint64_t>((static_cast<u128>(len) * (i + 1)) / n);
    out.emplace_back(b, e);
  }
  return out;
}

void sieve_range(std::uint64_t lo, std::uint64_t hi,
                 const std::function<void(std::span<const std::uint64_t>)>& on_batch,
                 const ResourceLimits& limits) {
  limits.check_x(hi, "sieve");
  if (hi <= lo || hi <= 2) return;
  if (lo <= 2) {
    const std::uint64_t two = 2;
    on_batch(std::span<const std::uint64_t>(&two, 1));
  }
  const std::vector<std::uint32_t> base = small_odd_primes(isqrt(hi));
  std::uint64_t start = std::max<std::uint64_t>(lo, 3) | 1;  // first odd >= max(lo, 3)
  std::vector<char> composite(kSegmentBytes);
  std::vector<std::uint64_t> batch;
  while (start < hi) {
    const std::uint64_t span_len = std::min<std::uint64_t>(kSegmentBytes, (hi - start + 1) / 2);
    const std::uint64_t end = start + 2 * span_len;  // exclusive, odd numbers start..end-2
    std::fill(composite.begin(), composite.begin() + static_cast<std::ptrdiff_t>(span_len), 0);
    for (const std::uint32_t q : base) {
      const std::uint64_t sq = std::uint64_t{q} * q;
      if (sq >= end) break;
      std::uint64_t first = std::max(sq, ((start + q - 1) / q) * q);
      if (first % 2 == 0) first += q;
      for (std::uint64_t v = first; v < end; v += 2 * std::uint64_t{q}) composite[(v - start) / 2] = 1;
    }
    batch.clear();
    for (std::uint64_t i = 0; i < span_len; ++i) {
      if (!composite[i]) batch.push_back(start + 2 * i);
    }
    if (!batch.empty()) on_batch(batch);
    start = end;
  }
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t x, const ResourceLimits& limits) {
  limits.check_x(x, "sieve_primes");
  const double estimate = x < 16 ? 8.0 : 1.3 * static_cast<double>(x) / std::log(static_cast<double>(x));
  limits.check_memory(static_cast<std::uint64_t>(estimate * sizeof(std::uint64_t)) + kSegmentBytes,
                      "sieve_primes");
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(estimate));
  sieve_range(0, x, [&](std::span<const std::uint64_t> b) { out.insert(out.end(), b.begin(), b.end()); },
              limits);
  return out;
}

std::uint64_t prime_count_in_ap(std::uint64_t x, std::uint64_t a, std::uint64_t d,
                                const ResourceLimits& limits) {
  require(d >= 1 && a < d, "prime_count_in_ap requires 0 <= a < d");
  std::uint64_t count = 0;
  sieve_range(0, x + 1,
              [&](std::span<const std::uint64_t> b) {
                for (const std::uint64_t q : b) count += (q % d == a);
              },
              limits);
  return count;
}

std::uint64_t power_valuation_residue(std::uint64_t n, const ProblemParams& params) {
  return PowerResidueEvaluator(params)(n);
}

std::vector<std::uint64_t> power_residue_counts(const ProblemParams& params, std::uint64_t lo,
                                                std::uint64_t hi) {
  std::vector<std::uint64_t> counts(params.m(), 0);
  if (hi <= lo) return counts;
  const PowerResidueEvaluator eval(params);
  const std::uint64_t d = params.d();
  for (std::uint64_t n = first_in_class(lo, params.a(), d); n < hi; n += d) ++counts[eval(n)];
  return counts;
}

ResidueHistogram count_power_residues(const ProblemParams& params, std::uint64_t x,
                                      const CensusOptions& opts) {
  opts.limits.check_x(x, "count_power_residues");
  ResidueHistogram hist{params, CensusKind::powers, x, std::vector<std::uint64_t>(params.m(), 0), 0, {}};
  const auto parts = detail::run_blocks(0, x, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
    return power_residue_counts(params, lo, hi);
  });
  for (const auto& part : parts) {
    for (std::size_t r = 0; r < part.size(); ++r) hist.counts[r] += part[r];
  }
  hist.total = std::accumulate(hist.counts.begin(), hist.counts.end(), std::uint64_t{0});
  const std::uint64_t expected = x > params.a() ? (x - params.a() + params.d() - 1) / params.d() : 0;
  ensure(hist.total == expected, "power census total must equal the progression size");
  return hist;
}

std::vector<std::uint64_t> prime_residue_counts(const ProblemParams& params, std::uint64_t lo,
                                                std::uint64_t hi, const ResourceLimits& limits) {
  std::vector<std::uint64_t> counts(params.m(), 0);
  const Prime p = params.p();
  const std::uint64_t pm1 = p.value() - 1;
  const DigitSumTable table(p.base());
  sieve_range(lo, hi,
              [&](std::span<const std::uint64_t> batch) {
                for (const std::uint64_t q : batch) {
                  if (q % params.d() != params.a()) continue;
                  ++counts[((q - table(q)) / pm1) % params.m()];
                }
              },
              limits);
  return counts;
}

ResidueHistogram count_prime_residues(const ProblemParams& params, std::uint64_t x,
                                      const CensusOptions& opts) {
  opts.limits.check_x(x, "count_prime_residues");
  ResidueHistogram hist{params, CensusKind::primes, x, std::vector<std::uint64_t>(params.m(), 0), 0, {}};
  const auto parts = detail::run_blocks(0, x, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
    return prime_residue_counts(params, lo, hi, opts.limits);
  });
  for (const auto& part : parts) {
    for (std::size_t r = 0; r < part.size(); ++r) hist.counts[r] += part[r];
  }
  hist.total = std::accumulate(hist.counts.begin(), hist.counts.end(), std::uint64_t{0});
  const bool x_counts = is_prime(x) && x % params.d() == params.a();
  hist.prime_count_inclusive = hist.total + (x_counts ? 1 : 0);
  return hist;
}

std::vector<std::uint64_t> count_Tj_all(const ProblemParams& params, std::uint64_t x,
                                        std::uint64_t r, const CensusOptions& opts) {
  require(params.h() == 2, "T_j counts are defined for h = 2");
  require(r < params.m(), "r must satisfy 0 <= r < m");
  require(x <= (std::uint64_t{1} << 32), "T_j census needs n^2 to fit 64 bits (x <= 2^32)");
  opts.limits.check_x(x, "count_Tj");
  const std::uint64_t mp = params.mprime();
  const std::uint64_t shift = (r * (params.p().value() - 1)) % mp;
  const auto parts = detail::run_blocks(0, x, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> t(mp, 0);
    const DigitSumTable table(params.p().base());
    for (std::uint64_t n = first_in_class(lo, params.a(), params.d()); n < hi; n += params.d()) {
      const std::uint64_t sq = n * n;
      const std::uint64_t j = sq % mp;
      // s_p(n^2) = j - r(p-1)  (mod m')
      if ((table(sq) + shift) % mp == j) ++t[j];
    }
    return t;
  });
  std::vector<std::uint64_t> out(mp, 0);
  for (const auto& part : parts) {
    for (std::size_t j = 0; j < part.size(); ++j) out[j] += part[j];
  }
  return out;
}

std::uint64_t count_Tj(const ProblemParams& params, std::uint64_t x, std::uint64_t r,
                       std::uint64_t j, const CensusOptions& opts) {
  require(j < params.mprime(), "j must satisfy 0 <= j < m'");
  return count_Tj_all(params, x, r, opts)[j];
}

DeviationReport deviation_report(const ResidueHistogram& hist) {
  DeviationReport rep{hist, {}, std::nullopt};
  const ProblemParams& pp = hist.params;
  if (hist.kind == CensusKind::powers) {
    rep.main_term = {hist.x, pp.d() * pp.m()};
  } else {
    ensure(hist.prime_count_inclusive.has_value(), "prime histogram lacks pi(x; a, d)");
    rep.main_term = {*hist.prime_count_inclusive, pp.m()};
  }
  const std::uint64_t g = std::gcd(rep.main_term.num, rep.main_term.den);
  if (g > 1) rep.main_term = {rep.main_term.num / g, rep.main_term.den / g};
  if (rep.main_term.num == 0) return rep;

  std::vector<double> dev;
  dev.reserve(hist.counts.size());
  for (const std::uint64_t c : hist.counts) {
    // (c - num/den) / (num/den) = (c*den - num) / num
    const __int128 diff = static_cast<__int128>(c) * rep.main_term.den - rep.main_term.num;
    dev.push_back(static_cast<double>(diff) / static_cast<double>(rep.main_term.num));
  }
  rep.relative_deviation = std::move(dev);
  return rep;
}

}  // namespace padic
