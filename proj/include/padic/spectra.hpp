#pragma once

// Exponential sums over squares and primes with a digit-sum phase, and
// empirical decay-exponent fits for them.
//
// Phases are measured in cycles: e(t) = exp(2 pi i t). Each phase is stored as
// an exact rational reduced to [0, 1), so products like beta * n^2 are reduced
// mod 1 in integer arithmetic before any trigonometry.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "padic/base.hpp"
#include "padic/census.hpp"

namespace padic {

class Phase {
 public:
  Phase() = default;
  /// num/den reduced mod 1; den > 0.
  Phase(std::int64_t num, std::uint64_t den);

  /// Exact conversion of a binary double (reduced mod 1).
  static Phase from_double(double v);
  /// Accepts "3/14", "-1/2", "0.25", "2". Throws ParameterError.
  static Phase parse(std::string_view text);

  std::uint64_t numerator() const { return num_; }
  std::uint64_t denominator() const { return den_; }
  double value() const;
  std::string to_string() const;

  /// Fractional part of (this * k), in [0, 1).
  double frac_times(std::uint64_t k) const;

  friend bool operator==(const Phase&, const Phase&) = default;

 private:
  std::uint64_t num_ = 0;  // 0 <= num_ < den_
  std::uint64_t den_ = 1;
};

struct PhasePoint {
  Phase alpha;
  Phase beta;
  Phase gamma;
  Base base{2};

  /// (b-1)*alpha is at least 1e-12 away from every integer.
  bool nondegenerate() const;
};

inline constexpr double kDegeneracyTolerance = 1e-12;

/// sum_{n<x} e(alpha s_b(n^2) + beta n^2 + gamma n). Requires x <= 2^32.
std::complex<double> exp_sum_squares(std::uint64_t x, const PhasePoint& phase, unsigned threads = 1);

/// sum_{q<x prime} e(alpha s_b(q) + beta q). gamma is ignored.
std::complex<double> exp_sum_primes(std::uint64_t x, const PhasePoint& phase, unsigned threads = 1,
                                    const ResourceLimits& limits = {});

enum class SumKind { squares, primes };

struct Checkpoint {
  std::uint64_t x = 0;
  std::complex<double> value;
  double magnitude = 0.0;
  double normalized = 0.0;
};

struct DecaySeries {
  SumKind kind = SumKind::squares;
  PhasePoint phase;
  std::vector<Checkpoint> checkpoints;
  /// Checkpoints with |S| == 0, excluded from the fit.
  std::vector<std::uint64_t> dropped;
  double fitted_slope = 0.0;
  double sigma_hat = 0.0;
};

/// Least-squares slope of log(magnitude) against log(x).
double fit_loglog_slope(const std::vector<Checkpoint>& points);

/// One incremental pass with checkpoints x_min * 2^i <= x_max.
/// Rejects degenerate phases and ranges with fewer than six checkpoints.
DecaySeries decay_profile(SumKind kind, const PhasePoint& phase, std::uint64_t x_min,
                          std::uint64_t x_max, const ResourceLimits& limits = {});

}  // namespace padic
