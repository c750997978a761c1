#include "padic/constructor.hpp"

#include <algorithm>
#include <string>

#include "padic/arith_digits.hpp"
#include "padic/errors.hpp"
#include "parallel.hpp"

namespace padic {
namespace {

Natural scale(const ProblemParams& pp) { return Natural(pp.d()) * Natural(pp.p().value() - 1) * Natural(pp.m()); }

// h p (6p)^h
Natural u_threshold(const ProblemParams& pp) {
  const std::uint64_t p = pp.p().value();
  return Natural(pp.h()) * Natural(p) * power(6 * p, pp.h());
}

// (4 p^u d (p-1) m)^h
Natural coefficient_bound(const ProblemParams& pp, unsigned u) {
  return (Natural(4) * power(pp.p().value(), u) * scale(pp)).pow(pp.h());
}

void require_h(const ProblemParams& pp) {
  require(pp.h() >= 2, "the witness construction requires h >= 2, got h=" + std::to_string(pp.h()));
}

}  // namespace

Natural WitnessParams::evaluate_t(const Natural& x) const {
  Integer acc = 0;
  for (auto it = t_coeffs.rbegin(); it != t_coeffs.rend(); ++it) acc = acc * x.value() + *it;
  return Natural(acc);
}

unsigned minimal_u(const ProblemParams& params) {
  require_h(params);
  const Natural bound = u_threshold(params);
  unsigned u = 1;
  while (power(params.p().value(), u) <= bound) ++u;
  return u;
}

unsigned minimal_k(const ProblemParams& params, unsigned u) {
  const Natural bound = coefficient_bound(params, u);
  unsigned k = 1;
  while (power(params.p().value(), k) <= bound) ++k;
  return k;
}

WitnessParams make_witness_params(const ProblemParams& params, unsigned u, unsigned k, Natural m0,
                                  Natural m1, Natural m2, Natural m3) {
  require_h(params);
  const std::uint64_t p = params.p().value();
  const Natural pu = power(p, u);
  const Natural pu1 = u >= 1 ? power(p, u - 1) : Natural(0);
  const Natural D = scale(params);
  const Natural thr = u_threshold(params);

  require(u >= 1 && pu > thr, "u=" + std::to_string(u) + " violates p^u > h p (6p)^h");
  // p^(u-1) <= m0 + a / D < p^u, cleared of the denominator
  const Natural shifted = m0 * D + Natural(params.a());
  require(pu1 * D <= shifted && shifted < pu * D, "m0 outside p^(u-1) <= m0 + a/(d(p-1)m) < p^u");
  require(pu1 <= m2 && m2 < pu, "m2 outside [p^(u-1), p^u)");
  require(pu1 <= m3 && m3 < pu, "m3 outside [p^(u-1), p^u)");
  require(Natural(1) <= m1 && m1 * thr < pu, "m1 outside 1 <= m1 < p^u / (h p (6p)^h)");
  require(power(p, k) > coefficient_bound(params, u),
          "k=" + std::to_string(k) + " violates p^k > (4 p^u d (p-1) m)^h");

  WitnessParams wp{params, u, k, m0, m1, m2, m3, {}};
  const Integer& Dv = D.value();
  wp.t_coeffs = {Dv * m0.value() + Integer(static_cast<unsigned long>(params.a())), -(Dv * m1.value()),
                 Dv * m2.value(), Dv * m3.value()};
  return wp;
}

WitnessParams choose_parameters(const ProblemParams& params) {
  const unsigned u = minimal_u(params);
  const unsigned k = minimal_k(params, u);
  const Natural base = power(params.p().value(), u - 1);
  try {
    return make_witness_params(params, u, k, base, Natural(1), base, base);
  } catch (const ParameterError& e) {
    // The canonical choice is admissible for every valid input.
    throw InternalError(std::string("canonical witness parameters rejected: ") + e.what());
  }
}

std::vector<Integer> expand_power_coeffs(const WitnessParams& wp) {
  const unsigned h = wp.base.h();
  std::vector<Integer> acc{1};
  for (unsigned step = 0; step < h; ++step) {
    std::vector<Integer> next(acc.size() + 3, 0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (std::size_t t = 0; t < 4; ++t) next[i + t] += acc[i] * wp.t_coeffs[t];
    }
    acc = std::move(next);
  }
  ensure(acc.size() == 3 * h + 1, "t(x)^h must have degree 3h");
  const Integer bound = coefficient_bound(wp.base, wp.u).value();
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (i == 1) {
      ensure(sgn(acc[i]) < 0, "coefficient of x^1 in t(x)^h must be negative");
    } else {
      ensure(sgn(acc[i]) > 0, "coefficient of x^" + std::to_string(i) + " in t(x)^h must be positive");
    }
    ensure(abs(acc[i]) <= bound, "coefficient of x^" + std::to_string(i) + " exceeds (4 p^u d (p-1) m)^h");
  }
  return acc;
}

WitnessCertificate witness_certificate(const WitnessParams& wp, std::uint64_t j) {
  const ProblemParams& pp = wp.base;
  require(j < pp.m(), "j must satisfy 0 <= j < m");
  const Prime p = pp.p();
  const unsigned exponent = wp.k + static_cast<unsigned>(j);

  WitnessCertificate cert{wp, j, {}, {}, {}, {}, 0, {}};
  cert.n = wp.evaluate_t(power(p.value(), exponent));
  cert.N = cert.n.pow(pp.h());
  cert.digit_sum_N = digit_sum(cert.N, p);
  cert.valuation = legendre_valuation_digits(cert.N, p);
  cert.residue = cert.valuation.mod(pp.m());
  cert.M_observed = cert.digit_sum_N.value() - Integer(static_cast<unsigned long>(exponent)) *
                                                   Integer(static_cast<unsigned long>(p.value() - 1));

  ensure(cert.n.mod(pp.d()) == pp.a(), "witness must satisfy n = a (mod d)");
  const std::uint64_t mp = pp.mprime();
  ensure(cert.N.mod(mp) == Natural(pp.a()).pow(pp.h()).mod(mp), "witness must satisfy n^h = a^h (mod (p-1)m)");
  ensure(cert.valuation * Natural(p.value() - 1) + cert.digit_sum_N == cert.N,
         "valuation must satisfy (p-1) e_p(N!) = N - s_p(N)");
  return cert;
}

CoverResult residue_cover(const ProblemParams& params, unsigned threads) {
  const WitnessParams wp = choose_parameters(params);
  const std::uint64_t m = params.m();

  CoverResult out;
  if (m == 1) {
    out.certificates.push_back(witness_certificate(wp, 0));
  } else {
    const auto blocks = detail::run_blocks(0, m, threads, [&](std::uint64_t lo, std::uint64_t hi) {
      std::vector<WitnessCertificate> part;
      for (std::uint64_t j = lo; j < hi; ++j) part.push_back(witness_certificate(wp, j));
      return part;
    });
    for (const auto& b : blocks) out.certificates.insert(out.certificates.end(), b.begin(), b.end());
  }

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  out.residue_map.assign(m, kUnset);
  for (std::size_t i = 0; i < out.certificates.size(); ++i) {
    const std::uint64_t r = out.certificates[i].residue;
    if (out.residue_map[r] != kUnset) {
      throw InternalError("residue cover failed: j=" + std::to_string(out.residue_map[r]) + " and j=" +
                          std::to_string(i) + " both give residue " + std::to_string(r));
    }
    out.residue_map[r] = i;
  }
  for (std::uint64_t r = 0; r < m; ++r) {
    if (out.residue_map[r] == kUnset) throw InternalError("residue cover failed: residue " + std::to_string(r) + " missed");
  }

  out.c_explicit = explicit_C_bound(params);
  out.within_explicit_bound = std::all_of(out.certificates.begin(), out.certificates.end(),
                                          [&](const WitnessCertificate& c) { return c.n < out.c_explicit; });
  return out;
}

Natural explicit_C_bound(const ProblemParams& params) {
  require_h(params);
  const std::uint64_t p = params.p().value();
  const unsigned long h = params.h();
  const Natural inner = Natural(4 * h) * Natural(p) * Natural(p) * power(6 * p, h);
  return Natural(params.m()).pow(3 * h + 1) * Natural(params.d()).pow(3 * h) *
         Natural(p - 1).pow(3 * h + 1) * power(p, 3 * params.m()) * inner.pow(1 + 3 * h);
}

Natural small_range_bound(const ProblemParams& params) {
  const Integer root = root_ceil(Natural(params.p().value()), params.h()).value();
  const Integer shift = (Integer(static_cast<unsigned long>(params.m())) - 2) *
                        Integer(static_cast<unsigned long>(params.d()));
  const Integer bound = root + shift;
  return sgn(bound) < 0 ? Natural(0) : Natural(bound);
}

std::set<std::uint64_t> small_range_residues(const ProblemParams& params, const Natural& bound,
                                             std::uint64_t max_values) {
  std::set<std::uint64_t> out;
  const std::uint64_t a = params.a();
  const std::uint64_t d = params.d();
  if (bound <= Natural(a)) return out;
  const Natural count = (bound - Natural(a) + Natural(d - 1)) / Natural(d);
  if (count > Natural(max_values)) {
    throw ResourceError("small_range_residues: " + count.to_string() + " values exceed the cap " +
                        std::to_string(max_values));
  }
  const PowerResidueEvaluator eval(params);
  const std::uint64_t hi = bound.to_u64();
  for (std::uint64_t n = a; n < hi; n += d) {
    out.insert(eval(n));
    if (out.size() == params.m()) break;
  }
  return out;
}

Natural admissible_pair_count(Prime p, unsigned u) {
  require(u >= 1, "u must be >= 1");
  const Natural width = power(p.value(), u) - power(p.value(), u - 1);
  return width * width;
}

DensityCensus density_smoke_check(const ProblemParams& params, const Natural& x, std::optional<unsigned> u,
                                  std::uint64_t max_candidates) {
  const unsigned u_min = minimal_u(params);
  DensityCensus out;
  out.u = u.value_or(u_min);
  require(out.u >= u_min, "u=" + std::to_string(out.u) + " is below the minimal admissible u=" + std::to_string(u_min));
  out.k_min = minimal_k(params, out.u);
  out.residue_counts.assign(params.m(), 0);

  const std::uint64_t p = params.p().value();
  const Natural lo = power(p, out.u - 1);
  const Natural hi = power(p, out.u);
  const Natural m0 = lo;
  const Natural m1(1);
  std::set<Natural> seen;
  std::uint64_t candidates = 0;

  for (unsigned k = out.k_min;; ++k) {
    const Natural X = power(p, k);
    if (make_witness_params(params, out.u, k, m0, m1, lo, lo).evaluate_t(X) >= x) break;
    for (Natural m3 = lo; m3 < hi; m3 += Natural(1)) {
      if (make_witness_params(params, out.u, k, m0, m1, lo, m3).evaluate_t(X) >= x) break;
      for (Natural m2 = lo; m2 < hi; m2 += Natural(1)) {
        const WitnessParams wp = make_witness_params(params, out.u, k, m0, m1, m2, m3);
        const Natural n = wp.evaluate_t(X);
        if (n >= x) break;
        if (++candidates > max_candidates) {
          throw ResourceError("density_smoke_check: more than " + std::to_string(max_candidates) +
                              " candidate witnesses below x");
        }
        expand_power_coeffs(wp);  // sign pattern of t(x)^h
        ensure(n.mod(params.d()) == params.a(), "density witness must satisfy n = a (mod d)");
        if (!seen.insert(n).second) continue;
        const std::uint64_t r = legendre_valuation_digits(n.pow(params.h()), params.p()).mod(params.m());
        ++out.residue_counts[r];
        if (!out.smallest || n < *out.smallest) out.smallest = n;
      }
    }
  }
  out.witnesses = seen.size();
  return out;
}

}  // namespace padic
