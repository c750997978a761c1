#pragma once

// Constructive witnesses n with e_p(n^h!) = r (mod m) and n = a (mod d).
//
// Witnesses are values of the cubic
//     t(x) = D (m3 x^3 + m2 x^2 - m1 x + m0) + a,   D = d (p-1) m,
// at x = p^(k+j). For k past the coefficient bound, the base-p digits of
// t(p^k)^h are the digits of its coefficients laid out in separate blocks,
// so s_p(t(p^k)^h) = k (p-1) + M with M independent of k, and stepping j
// walks the valuation through every class mod m.
//
// Everything here is exact integer arithmetic.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "padic/census.hpp"
#include "padic/natural.hpp"

namespace padic {

struct WitnessParams {
  ProblemParams base;
  unsigned u = 0;
  unsigned k = 0;
  Natural m0, m1, m2, m3;
  /// Coefficients of t(x), constant term first.
  std::array<Integer, 4> t_coeffs;

  Natural evaluate_t(const Natural& x) const;
};

/// Smallest u with p^u > h p (6p)^h.
unsigned minimal_u(const ProblemParams& params);
/// Smallest k with p^k > (4 p^u d (p-1) m)^h.
unsigned minimal_k(const ProblemParams& params, unsigned u);

/// Builds and validates parameters; throws ParameterError when any range,
/// u-bound or k-bound is violated.
WitnessParams make_witness_params(const ProblemParams& params, unsigned u, unsigned k, Natural m0,
                                  Natural m1, Natural m2, Natural m3);

/// Canonical choice: minimal u and k, m0 = m2 = m3 = p^(u-1), m1 = 1.
WitnessParams choose_parameters(const ProblemParams& params);

/// Coefficients c_0 .. c_{3h} of t(x)^h. Checks that c_1 < 0, every other
/// c_i > 0, and |c_i| <= (4 p^u d (p-1) m)^h; InternalError otherwise.
std::vector<Integer> expand_power_coeffs(const WitnessParams& wp);

struct WitnessCertificate {
  WitnessParams params;
  std::uint64_t j = 0;
  Natural n;
  Natural N;  // n^h
  Natural digit_sum_N;
  Natural valuation;  // e_p(N!) = (N - s_p(N)) / (p-1)
  std::uint64_t residue = 0;
  Integer M_observed;  // s_p(N) - (k+j)(p-1)

  unsigned exponent() const { return params.k + static_cast<unsigned>(j); }
};

/// Witness t(p^(k+j)) with every field recomputed and its invariants checked.
WitnessCertificate witness_certificate(const WitnessParams& wp, std::uint64_t j);

struct CoverResult {
  std::vector<WitnessCertificate> certificates;  // index j
  std::vector<std::size_t> residue_map;          // residue r -> index into certificates
  Natural c_explicit;
  /// Every witness lies below c_explicit. The closed form can fall short for
  /// d much larger than p, so this is reported rather than assumed.
  bool within_explicit_bound = false;
};

/// Certificates for j = 0 .. m-1; throws InternalError unless all m residues are hit.
CoverResult residue_cover(const ProblemParams& params, unsigned threads = 1);

/// m^(3h+1) d^(3h) (p-1)^(3h+1) p^(3m) (4 h p^2 (6p)^h)^(1+3h).
Natural explicit_C_bound(const ProblemParams& params);

/// ceil(p^(1/h) + (m-2) d), clamped at zero; p^(1/h) is irrational for h >= 2.
Natural small_range_bound(const ProblemParams& params);

/// {e_p(n^h!) mod m : 0 <= n < bound, n = a (mod d)} by enumeration.
std::set<std::uint64_t> small_range_residues(const ProblemParams& params, const Natural& bound,
                                             std::uint64_t max_values = 1'000'000);

/// (p^u - p^(u-1))^2: admissible (m2, m3) pairs for a given u.
Natural admissible_pair_count(Prime p, unsigned u);

struct DensityCensus {
  unsigned u = 0;
  unsigned k_min = 0;
  std::uint64_t witnesses = 0;                 // distinct verified witnesses below x
  std::vector<std::uint64_t> residue_counts;   // by e_p(n^h!) mod m
  std::optional<Natural> smallest;
};

/// Counts witnesses t(p^k) < x over admissible (m2, m3) and k >= k_min, with
/// m0 = p^(u-1), m1 = 1. u defaults to the minimal admissible value.
DensityCensus density_smoke_check(const ProblemParams& params, const Natural& x,
                                  std::optional<unsigned> u = std::nullopt,
                                  std::uint64_t max_candidates = 1'000'000);

}  // namespace padic
