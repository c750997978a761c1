#include "padic/report.hpp"

#include <charconv>
#include <cmath>

namespace padic {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const char* to_string(CensusKind kind) { return kind == CensusKind::powers ? "powers" : "primes"; }

const char* to_string(SumKind kind) { return kind == SumKind::squares ? "squares" : "primes"; }

Json to_json(const ProblemParams& params) {
  return Json{{"p", params.p().value()}, {"h", params.h()},        {"m", params.m()},
              {"d", params.d()},         {"a", params.a()},        {"mprime", params.mprime()}};
}

Json to_json(const DeviationReport& report) {
  const ResidueHistogram& h = report.histogram;
  Json rows = Json::array();
  for (std::size_t r = 0; r < h.counts.size(); ++r) {
    Json row{{"r", r}, {"count", h.counts[r]}, {"main_term", report.main_term.value()}};
    row["rel_dev"] = report.relative_deviation ? Json((*report.relative_deviation)[r]) : Json(nullptr);
    rows.push_back(std::move(row));
  }
  Json out{{"kind", to_string(h.kind)},
           {"params", to_json(h.params)},
           {"x", h.x},
           {"total", h.total},
           {"main_term", {{"num", report.main_term.num}, {"den", report.main_term.den}}}};
  if (h.prime_count_inclusive) out["prime_count_inclusive"] = *h.prime_count_inclusive;
  out["residues"] = std::move(rows);
  return out;
}

Json to_json(const DecaySeries& series) {
  Json points = Json::array();
  for (const auto& c : series.checkpoints) {
    points.push_back({{"x", c.x},
                      {"re", c.value.real()},
                      {"im", c.value.imag()},
                      {"magnitude", c.magnitude},
                      {"normalized", c.normalized}});
  }
  auto number_or_null = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  return Json{{"kind", to_string(series.kind)},
              {"base", series.phase.base.value()},
              {"alpha", series.phase.alpha.to_string()},
              {"beta", series.phase.beta.to_string()},
              {"gamma", series.phase.gamma.to_string()},
              {"fitted_slope", number_or_null(series.fitted_slope)},
              {"sigma_hat", number_or_null(series.sigma_hat)},
              {"dropped_checkpoints", series.dropped},
              {"checkpoints", std::move(points)}};
}

Json to_json(const WitnessCertificate& cert, bool include_N) {
  const WitnessParams& wp = cert.params;
  Json out{{"params", to_json(wp.base)},
           {"u", wp.u},
           {"k", wp.k},
           {"m0", wp.m0.to_string()},
           {"m1", wp.m1.to_string()},
           {"m2", wp.m2.to_string()},
           {"m3", wp.m3.to_string()},
           {"j", cert.j},
           {"n", cert.n.to_string()},
           {"n_digits", cert.n.decimal_digits()},
           {"N_digits", cert.N.decimal_digits()},
           {"digit_sum_N", cert.digit_sum_N.to_string()},
           {"residue", cert.residue},
           {"M_observed", cert.M_observed.get_str()}};
  if (include_N) out["N"] = cert.N.to_string();
  return out;
}

Json to_json(const CoverResult& cover, bool include_N) {
  Json certs = Json::array();
  for (const auto& c : cover.certificates) certs.push_back(to_json(c, include_N));
  Json map = Json::object();
  for (std::size_t r = 0; r < cover.residue_map.size(); ++r) {
    map[std::to_string(r)] = cover.certificates[cover.residue_map[r]].n.to_string();
  }
  return Json{{"covered_residues", cover.residue_map.size()},
              {"residue_map", std::move(map)},
              {"c_explicit", cover.c_explicit.to_string()},
              {"within_explicit_bound", cover.within_explicit_bound},
              {"certificates", std::move(certs)}};
}

Json to_json(const DensityCensus& census) {
  Json out{{"u", census.u},
           {"k_min", census.k_min},
           {"witnesses", census.witnesses},
           {"residue_counts", census.residue_counts}};
  out["smallest"] = census.smallest ? Json(census.smallest->to_string()) : Json(nullptr);
  return out;
}

void write_csv(std::ostream& os, const DeviationReport& report) {
  const ResidueHistogram& h = report.histogram;
  os << "r,count,main_term,rel_dev\n";
  for (std::size_t r = 0; r < h.counts.size(); ++r) {
    os << r << ',' << h.counts[r] << ',' << format_double(report.main_term.value()) << ',';
    if (report.relative_deviation) os << format_double((*report.relative_deviation)[r]);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const DecaySeries& series) {
  os << "x,re,im,magnitude,normalized\n";
  for (const auto& c : series.checkpoints) {
    os << c.x << ',' << format_double(c.value.real()) << ',' << format_double(c.value.imag()) << ','
       << format_double(c.magnitude) << ',' << format_double(c.normalized) << '\n';
  }
}

void write_csv(std::ostream& os, const std::vector<WitnessCertificate>& certs) {
  os << "j,k,residue,M_observed,digit_sum_N,n\n";
  for (const auto& c : certs) {
    os << c.j << ',' << c.exponent() << ',' << c.residue << ',' << c.M_observed.get_str() << ','
       << c.digit_sum_N.to_string() << ',' << c.n.to_string() << '\n';
  }
}

}  // namespace padic
