#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padic/arith_digits.hpp"
#include "padic/errors.hpp"
#include "padic/spectra.hpp"

using namespace padic;

namespace {

PhasePoint point(std::uint64_t b, Phase alpha, Phase beta = {}, Phase gamma = {}) {
  return PhasePoint{alpha, beta, gamma, Base(b)};
}

double rel(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// Direct long-double evaluation of the squares sum, without the library's
// rational phase reduction.
std::complex<double> squares_reference(std::uint64_t x, std::uint64_t b, long double alpha, long double beta,
                                       long double gamma) {
  std::complex<long double> acc = 0;
  for (std::uint64_t n = 0; n < x; ++n) {
    std::uint64_t s = 0;
    for (std::uint64_t v = n * n; v; v /= b) s += v % b;
    const long double sq = static_cast<long double>(n) * n;
    long double t = alpha * s + beta * sq + gamma * n;
    t -= std::floor(t);
    acc += std::polar(1.0L, 2.0L * std::acos(-1.0L) * t);
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace

TEST(PhaseType, ParsesRationalsAndDecimals) {
  EXPECT_EQ(Phase::parse("3/14"), Phase(3, 14));
  EXPECT_EQ(Phase::parse("-1/2"), Phase(1, 2));
  EXPECT_EQ(Phase::parse("0.25"), Phase(1, 4));
  EXPECT_EQ(Phase::parse("1.5"), Phase(1, 2));
  EXPECT_EQ(Phase::parse("2"), Phase(0, 1));
  EXPECT_EQ(Phase::parse("-0.75"), Phase(1, 4));
  EXPECT_EQ(Phase::parse("6/4"), Phase(1, 2));
  EXPECT_NEAR(Phase::parse("1e-1").value(), 0.1, 1e-16);
  EXPECT_THROW(Phase::parse("abc"), ParameterError);
  EXPECT_THROW(Phase::parse("1/0"), ParameterError);
  EXPECT_THROW(Phase::parse(""), ParameterError);
  EXPECT_THROW(Phase::parse("1/"), ParameterError);
}

TEST(PhaseType, FromDoubleIsExactForBinaryFractions) {
  EXPECT_EQ(Phase::from_double(0.5), Phase(1, 2));
  EXPECT_EQ(Phase::from_double(-0.125), Phase(7, 8));
  EXPECT_EQ(Phase::from_double(3.0), Phase(0, 1));
  EXPECT_NEAR(Phase::from_double(0.1).value(), 0.1, 1e-17);
}

TEST(PhaseType, FracTimesReducesExactly) {
  const Phase third(1, 3);
  EXPECT_DOUBLE_EQ(third.frac_times(3'000'000'000'000'001ull), 1.0 / 3.0);
  const Phase fine = Phase::from_double(0.7);  // denominator 2^k, large numerator
  const std::uint64_t k = (std::uint64_t{1} << 47) + 12345;
  const long double want = std::fmod(static_cast<long double>(fine.numerator()) * (k % fine.denominator()),
                                     static_cast<long double>(fine.denominator())) /
                           fine.denominator();
  EXPECT_NEAR(fine.frac_times(k), static_cast<double>(want), 1e-12);
}

TEST(PhasePointType, DegeneracyFlag) {
  EXPECT_FALSE(point(2, Phase(0, 1)).nondegenerate());
  EXPECT_FALSE(point(3, Phase(1, 2)).nondegenerate());
  EXPECT_FALSE(point(5, Phase(3, 4)).nondegenerate());
  EXPECT_TRUE(point(2, Phase(1, 2)).nondegenerate());
  EXPECT_TRUE(point(3, Phase(1, 4)).nondegenerate());
  EXPECT_TRUE(point(5, Phase(1, 6)).nondegenerate());
}

TEST(ExpSumSquares, ZeroPhaseCountsTerms) {
  for (const std::uint64_t x : {0ull, 1ull, 17ull, 100000ull}) {
    EXPECT_EQ(exp_sum_squares(x, point(3, Phase())), std::complex<double>(static_cast<double>(x), 0.0));
  }
}

TEST(ExpSumSquares, ThueMorseOnFirstFourSquares) {
  // s_2(0), s_2(1), s_2(4), s_2(9) = 0, 1, 1, 2
  EXPECT_LT(std::abs(exp_sum_squares(4, point(2, Phase(1, 2)))), 1e-12);
}

TEST(ExpSumSquares, DegenerateIdentity) {
  // s_b(n^2) = n^2 (mod b-1), so alpha (s_b(n^2) - n^2) is an integer.
  const std::uint64_t x = 200000;
  const std::complex<double> want(static_cast<double>(x), 0.0);
  EXPECT_LT(rel(exp_sum_squares(x, point(2, Phase(1, 1), Phase(-1, 1))), want), 1e-9);
  EXPECT_LT(rel(exp_sum_squares(x, point(3, Phase(1, 2), Phase(-1, 2))), want), 1e-9);
  EXPECT_LT(rel(exp_sum_squares(x, point(4, Phase(1, 3), Phase(-1, 3))), want), 1e-9);
  EXPECT_LT(rel(exp_sum_squares(x, point(7, Phase(5, 6), Phase(-5, 6))), want), 1e-9);
}

TEST(ExpSumSquares, MatchesLongDoubleReference) {
  const std::uint64_t x = 5000;
  const auto got = exp_sum_squares(x, point(3, Phase(2, 7), Phase(1, 5), Phase(3, 11)));
  const auto want = squares_reference(x, 3, 2.0L / 7, 1.0L / 5, 3.0L / 11);
  EXPECT_LT(std::abs(got - want), 1e-8);
}

TEST(ExpSumSquares, TriangleBoundAndPartitionInvariance) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const PhasePoint pp = point(2 + rng() % 9, Phase(rng() % 97, 97), Phase(rng() % 31, 31), Phase(rng() % 13, 13));
    const std::uint64_t x = 1 + rng() % 100000;
    const auto single = exp_sum_squares(x, pp);
    EXPECT_LE(std::abs(single), static_cast<double>(x) * (1 + 1e-12));
    for (const unsigned threads : {2u, 5u}) {
      EXPECT_LT(std::abs(exp_sum_squares(x, pp, threads) - single), 1e-6 * static_cast<double>(x));
    }
  }
}

TEST(ExpSumSquares, RejectsOversizedRange) {
  EXPECT_THROW(exp_sum_squares((std::uint64_t{1} << 32) + 1, point(2, Phase(1, 2))), ParameterError);
}

TEST(ExpSumPrimes, SingleTermBelowThree) {
  const PhasePoint pp = point(3, Phase(2, 7), Phase(1, 9));
  const double t = 2.0 / 7 * static_cast<double>(digit_sum(std::uint64_t{2}, Base(3))) + 2.0 / 9;
  const std::complex<double> want = std::polar(1.0, 2 * M_PI * t);
  EXPECT_LT(std::abs(exp_sum_primes(3, pp) - want), 1e-12);
}

TEST(ExpSumPrimes, ZeroPhaseCountsPrimes) {
  EXPECT_EQ(exp_sum_primes(100000, point(5, Phase())).real(), 9592.0);
}

TEST(ExpSumPrimes, ParityOfBinaryDigitSums) {
  EXPECT_LT(std::abs(exp_sum_primes(10, point(2, Phase(1, 2)))), 1e-12);
  std::complex<double> want = 0;
  for (const auto q : oracle::primes_below(30000)) {
    std::uint64_t s = 0;
    for (auto v = q; v; v >>= 1) s += v & 1;
    want += s % 2 == 0 ? 1.0 : -1.0;
  }
  EXPECT_LT(std::abs(exp_sum_primes(30000, point(2, Phase(1, 2))) - want), 1e-9);
}

TEST(ExpSumPrimes, TriangleBoundAndThreads) {
  const PhasePoint pp = point(3, Phase(1, 4), Phase(2, 5));
  const auto single = exp_sum_primes(200000, pp);
  EXPECT_LE(std::abs(single), 17984.0);  // pi(199999)
  EXPECT_LT(std::abs(exp_sum_primes(200000, pp, 4) - single), 1e-6 * 17984);
}

TEST(Slope, RecoversPowerLawAndSkipsZeros) {
  std::vector<Checkpoint> pts;
  for (std::uint64_t x = 1024; x <= (1u << 20); x *= 2) {
    const double mag = 3.0 * std::pow(static_cast<double>(x), 0.7);
    pts.push_back({x, {mag, 0}, mag, mag / static_cast<double>(x)});
  }
  pts.push_back({1u << 21, {0, 0}, 0.0, 0.0});
  EXPECT_NEAR(fit_loglog_slope(pts), 0.7, 1e-12);
}

TEST(DecayProfile, RejectsDegeneratePhase) {
  EXPECT_THROW(decay_profile(SumKind::squares, point(2, Phase()), 1024, 1 << 16), DegeneratePhaseError);
  EXPECT_THROW(decay_profile(SumKind::primes, point(2, Phase()), 1024, 1 << 16), DegeneratePhaseError);
  EXPECT_THROW(decay_profile(SumKind::primes, point(3, Phase(1, 2)), 1024, 1 << 16), DegeneratePhaseError);
  try {
    decay_profile(SumKind::squares, point(2, Phase()), 1024, 1 << 16);
  } catch (const DegeneratePhaseError& e) {
    EXPECT_NE(std::string(e.what()).find("(b-1)*alpha"), std::string::npos);
  }
}

TEST(DecayProfile, RequiresSixCheckpoints) {
  EXPECT_THROW(decay_profile(SumKind::squares, point(2, Phase(1, 2)), 1024, 1024 * 31), ParameterError);
  const auto s = decay_profile(SumKind::squares, point(2, Phase(1, 2)), 1024, 1024 * 32);
  EXPECT_EQ(s.checkpoints.size(), 6u);
}

TEST(DecayProfile, CheckpointsMatchFreshEvaluations) {
  const PhasePoint pp = point(3, Phase(1, 3), Phase(1, 7), Phase(2, 9));
  const auto series = decay_profile(SumKind::squares, pp, 100, 100 * 64);
  ASSERT_EQ(series.checkpoints.size(), 7u);
  for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
    const auto& c = series.checkpoints[i];
    EXPECT_EQ(c.x, 100u << i);
    EXPECT_LT(rel(c.value, exp_sum_squares(c.x, pp)), 1e-9);
    EXPECT_DOUBLE_EQ(c.normalized, c.magnitude / static_cast<double>(c.x));
  }
  const PhasePoint qp = point(5, Phase(1, 3), Phase(1, 7));
  const auto primes = decay_profile(SumKind::primes, qp, 1000, 1000 * 64);
  for (const auto& c : primes.checkpoints) EXPECT_LT(rel(c.value, exp_sum_primes(c.x, qp)), 1e-9);
}

TEST(DecayProfile, ZeroCheckpointIsDropped) {
  // With alpha = 1/2 in base 2: S(1) = 1, S(2) = 0, S(4) = 0, S(8) = -2.
  const auto s = decay_profile(SumKind::squares, point(2, Phase(1, 2)), 1, 64);
  ASSERT_GE(s.dropped.size(), 2u);
  EXPECT_EQ(s.dropped[0], 2u);
  EXPECT_EQ(s.dropped[1], 4u);
  EXPECT_EQ(s.checkpoints[3].value, std::complex<double>(-2.0, 0.0));
  EXPECT_TRUE(std::isfinite(s.fitted_slope));
}

TEST(DecayProfile, ThueMorseSquaresDecay) {
  const auto s = decay_profile(SumKind::squares, point(2, Phase(1, 2)), 1 << 10, 1 << 20);
  EXPECT_GT(s.sigma_hat, 0.05);
  EXPECT_DOUBLE_EQ(s.sigma_hat, 1.0 - s.fitted_slope);
}
