#pragma once

// Residue censuses of e_p(n^h!) mod m over arithmetic progressions and over
// primes, plus the segmented prime sieve they rely on.
//
// All censuses count n < x (exclusive). pi(x; a, d) counts q <= x, so the
// prime census stores both the strict total and the inclusive pi value.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "padic/arith_digits.hpp"
#include "padic/base.hpp"

namespace padic {

/// Validated (p, h, m, d, a) with derived m' = (p-1)m.
class ProblemParams {
 public:
  ProblemParams(std::uint64_t p, unsigned h, std::uint64_t m, std::uint64_t d, std::uint64_t a);

  Prime p() const { return p_; }
  unsigned h() const { return h_; }
  std::uint64_t m() const { return m_; }
  std::uint64_t d() const { return d_; }
  std::uint64_t a() const { return a_; }
  std::uint64_t mprime() const { return (p_.value() - 1) * m_; }

  friend bool operator==(const ProblemParams&, const ProblemParams&) = default;

 private:
  Prime p_;
  unsigned h_;
  std::uint64_t m_;
  std::uint64_t d_;
  std::uint64_t a_;
};

/// Size caps. Defaults: x <= 1e9, 4 GiB. Overridable through the
/// PADIC_MAX_X and PADIC_MAX_MEMORY environment variables.
struct ResourceLimits {
  std::uint64_t max_x = 1'000'000'000;
  std::uint64_t max_memory_bytes = std::uint64_t{4} << 30;

  static ResourceLimits from_env();
  void check_x(std::uint64_t x, const char* what) const;
  void check_memory(std::uint64_t bytes, const char* what) const;
};

struct CensusOptions {
  unsigned threads = 1;
  ResourceLimits limits{};
};

enum class CensusKind { powers, primes };

struct ResidueHistogram {
  ProblemParams params;
  CensusKind kind = CensusKind::powers;
  std::uint64_t x = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  /// pi(x; a, d) with the inclusive bound; set for prime censuses only.
  std::optional<std::uint64_t> prime_count_inclusive;
};

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct DeviationReport {
  ResidueHistogram histogram;
  Rational main_term;
  /// (counts[r] - main_term) / main_term, absent when main_term == 0.
  std::optional<std::vector<double>> relative_deviation;
};

// -- Sieve ------------------------------------------------------------------

/// Calls on_batch with the primes in [lo, hi), one increasing batch per
/// segment. Segmented, odd-only; memory O(sqrt(hi) + segment).
void sieve_range(std::uint64_t lo, std::uint64_t hi,
                 const std::function<void(std::span<const std::uint64_t>)>& on_batch,
                 const ResourceLimits& limits = {});

/// All primes below x, increasing.
std::vector<std::uint64_t> sieve_primes(std::uint64_t x, const ResourceLimits& limits = {});

/// #{q <= x : q prime, q = a (mod d)}.
std::uint64_t prime_count_in_ap(std::uint64_t x, std::uint64_t a, std::uint64_t d,
                                const ResourceLimits& limits = {});

// -- Censuses ---------------------------------------------------------------

/// e_p(n^h!) mod m via the digit form of Legendre's formula. n^h is formed in
/// 64 bits, 128 bits or arbitrary precision, whichever is the narrowest that
/// holds it. Immutable; safe to share between threads.
class PowerResidueEvaluator {
 public:
  explicit PowerResidueEvaluator(const ProblemParams& params);
  std::uint64_t operator()(std::uint64_t n) const;
  /// Largest n whose h-th power takes the 64-bit path.
  std::uint64_t word_path_max() const { return word_max_; }

 private:
  ProblemParams params_;
  DigitSumTable table_;
  std::uint64_t word_max_;
  std::uint64_t wide_max_;
};

/// One-shot convenience wrapper around PowerResidueEvaluator.
std::uint64_t power_valuation_residue(std::uint64_t n, const ProblemParams& params);

/// Residue counts for n in [lo, hi) with n = a (mod d). Building block for
/// partitioned runs; merging subranges by addition is exact.
std::vector<std::uint64_t> power_residue_counts(const ProblemParams& params, std::uint64_t lo,
                                                std::uint64_t hi);

ResidueHistogram count_power_residues(const ProblemParams& params, std::uint64_t x,
                                      const CensusOptions& opts = {});

/// Residue counts of e_p(q!) mod m for primes q in [lo, hi), q = a (mod d).
std::vector<std::uint64_t> prime_residue_counts(const ProblemParams& params, std::uint64_t lo,
                                                std::uint64_t hi, const ResourceLimits& limits = {});

/// Counts e_p(q!) mod m over primes q < x, q = a (mod d). params.h is ignored.
ResidueHistogram count_prime_residues(const ProblemParams& params, std::uint64_t x,
                                      const CensusOptions& opts = {});

/// T_j(x) = #{n < x : n = a (d), n^2 = j (m'), s_p(n^2) = j - r(p-1) (m')}.
/// Requires h == 2, r < m, j < m'.
std::uint64_t count_Tj(const ProblemParams& params, std::uint64_t x, std::uint64_t r,
                       std::uint64_t j, const CensusOptions& opts = {});

/// T_0(x) .. T_{m'-1}(x) in one pass.
std::vector<std::uint64_t> count_Tj_all(const ProblemParams& params, std::uint64_t x,
                                        std::uint64_t r, const CensusOptions& opts = {});

DeviationReport deviation_report(const ResidueHistogram& hist);

/// Splits [lo, hi) into `parts` contiguous blocks of near-equal size.
std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_range(std::uint64_t lo,
                                                                     std::uint64_t hi,
                                                                     unsigned parts);

}  // namespace padic
