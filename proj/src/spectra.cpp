#include "padic/spectra.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "padic/arith_digits.hpp"
#include "padic/errors.hpp"
#include "parallel.hpp"

namespace padic {
namespace {

// Neumaier summation for one real component.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// e(t), reduced to the nearest quarter turn so that multiples of 1/4 are exact.
std::complex<double> unit_cycle(double t) {
  t -= std::floor(t);
  const double quarters = std::nearbyint(4.0 * t);
  const double angle = 2.0 * std::numbers::pi * (t - 0.25 * quarters);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  switch (static_cast<int>(quarters) & 3) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

class ComplexAccumulator {
 public:
  void add_cycles(double t) { add(unit_cycle(t)); }
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

std::uint64_t parse_u64(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(),
          "malformed phase '" + std::string(whole) + "'");
  return v;
}

constexpr std::uint64_t kMaxSquaresX = std::uint64_t{1} << 32;

}  // namespace

Phase::Phase(std::int64_t num, std::uint64_t den) {
  require(den > 0, "phase denominator must be positive");
  __int128 r = static_cast<__int128>(num) % static_cast<__int128>(den);
  if (r < 0) r += den;
  num_ = static_cast<std::uint64_t>(r);
  den_ = den;
  const std::uint64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Phase Phase::from_double(double v) {
  require(std::isfinite(v), "phase must be finite");
  const double f = v - std::floor(v);
  if (f == 0.0) return Phase(0, 1);
  // f < 1 carries at most 53 significant bits, so the 2^-62 grid is exact for f >= 2^-9.
  const auto scaled = static_cast<std::uint64_t>(std::llround(std::ldexp(f, 62)));
  Phase out;
  out.den_ = std::uint64_t{1} << 62;
  out.num_ = scaled % out.den_;
  const std::uint64_t g = std::gcd(out.num_, out.den_);
  if (out.num_ == 0) return Phase(0, 1);
  out.num_ /= g;
  out.den_ /= g;
  return out;
}

Phase Phase::parse(std::string_view text) {
  require(!text.empty(), "empty phase");
  const std::string_view whole = text;
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  __int128 num = 0;
  std::uint64_t den = 1;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num = parse_u64(text.substr(0, slash), whole);
    den = parse_u64(text.substr(slash + 1), whole);
    require(den > 0, "phase denominator must be positive in '" + std::string(whole) + "'");
  } else if (text.find_first_of("eE") != std::string_view::npos) {
    const std::string s(whole);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    require(end != nullptr && *end == '\0', "malformed phase '" + s + "'");
    return from_double(v);
  } else {
    const auto dot = text.find('.');
    const std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    require(!int_part.empty() || !frac_part.empty(), "malformed phase '" + std::string(whole) + "'");
    require(frac_part.size() <= 18, "phase '" + std::string(whole) + "' has more than 18 decimals");
    if (!int_part.empty()) parse_u64(int_part, whole);  // validated, irrelevant mod 1
    num = frac_part.empty() ? 0 : parse_u64(frac_part, whole);
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  }
  num %= den;
  if (negative) num = (den - num) % den;
  Phase out;
  out.num_ = static_cast<std::uint64_t>(num);
  out.den_ = den;
  const std::uint64_t g = std::gcd(out.num_, out.den_);
  out.num_ /= g;
  out.den_ /= g;
  return out;
}

double Phase::value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

std::string Phase::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

double Phase::frac_times(std::uint64_t k) const {
  if (num_ == 0) return 0.0;
  const std::uint64_t km = k % den_;
  std::uint64_t r;
  if (km < (std::uint64_t{1} << 32) && num_ < (std::uint64_t{1} << 32)) {
    r = (num_ * km) % den_;
  } else {
    r = static_cast<std::uint64_t>((static_cast<u128>(num_) * km) % den_);
  }
  return static_cast<double>(r) / static_cast<double>(den_);
}

bool PhasePoint::nondegenerate() const {
  const std::uint64_t bm1 = base.value() - 1;
  const double f = alpha.frac_times(bm1);
  return std::min(f, 1.0 - f) > kDegeneracyTolerance;
}

std::complex<double> exp_sum_squares(std::uint64_t x, const PhasePoint& phase, unsigned threads) {
  require(x <= kMaxSquaresX, "exp_sum_squares needs n^2 to fit 64 bits (x <= 2^32)");
  const auto parts = detail::run_blocks(0, x, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    const DigitSumTable table(phase.base);
    ComplexAccumulator acc;
    for (std::uint64_t n = lo; n < hi; ++n) {
      const std::uint64_t sq = n * n;
      acc.add_cycles(phase.alpha.frac_times(table(sq)) + phase.beta.frac_times(sq) +
                     phase.gamma.frac_times(n));
    }
    return acc.value();
  });
  ComplexAccumulator total;
  for (const auto& z : parts) total.add(z);
  return total.value();
}

std::complex<double> exp_sum_primes(std::uint64_t x, const PhasePoint& phase, unsigned threads,
                                    const ResourceLimits& limits) {
  limits.check_x(x, "exp_sum_primes");
  const auto parts = detail::run_blocks(0, x, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    const DigitSumTable table(phase.base);
    ComplexAccumulator acc;
    sieve_range(lo, hi,
                [&](std::span<const std::uint64_t> batch) {
                  for (const std::uint64_t q : batch) {
                    acc.add_cycles(phase.alpha.frac_times(table(q)) + phase.beta.frac_times(q));
                  }
                },
                limits);
    return acc.value();
  });
  ComplexAccumulator total;
  for (const auto& z : parts) total.add(z);
  return total.value();
}

double fit_loglog_slope(const std::vector<Checkpoint>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& c : points) {
    if (!(c.magnitude > 0.0)) continue;
    const double lx = std::log(static_cast<double>(c.x));
    const double ly = std::log(c.magnitude);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

DecaySeries decay_profile(SumKind kind, const PhasePoint& phase, std::uint64_t x_min,
                          std::uint64_t x_max, const ResourceLimits& limits) {
  if (!phase.nondegenerate()) {
    throw DegeneratePhaseError("degenerate phase: (b-1)*alpha = " + std::to_string(phase.base.value() - 1) +
                               "*" + phase.alpha.to_string() +
                               " is an integer; the decay hypothesis requires (b-1)*alpha not in Z");
  }
  require(x_min >= 1, "x_min must be >= 1");
  require(x_max / x_min >= 32, "x_max / x_min must be >= 2^5 (at least six checkpoints)");
  if (kind == SumKind::squares) {
    require(x_max <= kMaxSquaresX, "squares decay profile needs x_max <= 2^32");
  }
  limits.check_x(x_max, "decay_profile");

  std::vector<std::uint64_t> marks;
  for (std::uint64_t x = x_min; x <= x_max; x *= 2) {
    marks.push_back(x);
    if (x > x_max / 2) break;
  }

  DecaySeries series;
  series.kind = kind;
  series.phase = phase;
  ComplexAccumulator acc;
  std::size_t next = 0;
  auto record_until = [&](std::uint64_t bound) {
    // Sum covers terms < bound: record every checkpoint x <= bound.
    while (next < marks.size() && marks[next] <= bound) {
      const std::complex<double> z = acc.value();
      const double mag = std::abs(z);
      series.checkpoints.push_back({marks[next], z, mag, mag / static_cast<double>(marks[next])});
      if (mag == 0.0) series.dropped.push_back(marks[next]);
      ++next;
    }
  };

  const DigitSumTable table(phase.base);
  if (kind == SumKind::squares) {
    for (std::uint64_t n = 0; n < marks.back(); ++n) {
      record_until(n);
      const std::uint64_t sq = n * n;
      acc.add_cycles(phase.alpha.frac_times(table(sq)) + phase.beta.frac_times(sq) +
                     phase.gamma.frac_times(n));
    }
  } else {
    sieve_range(0, marks.back(),
                [&](std::span<const std::uint64_t> batch) {
                  for (const std::uint64_t q : batch) {
                    record_until(q);
                    acc.add_cycles(phase.alpha.frac_times(table(q)) + phase.beta.frac_times(q));
                  }
                },
                limits);
  }
  record_until(marks.back());
  ensure(series.checkpoints.size() == marks.size(), "every checkpoint must be recorded");

  series.fitted_slope = fit_loglog_slope(series.checkpoints);
  series.sigma_hat = 1.0 - series.fitted_slope;
  return series;
}

}  // namespace padic
