#pragma once

// JSON and CSV emission for census, spectra and constructor results.
//
// CSV schemas:
//   census:  r,count,main_term,rel_dev
//   decay:   x,re,im,magnitude,normalized
//   cover:   j,k,residue,M_observed,digit_sum_N,n

#include <ostream>

#include <json.hpp>

#include "padic/census.hpp"
#include "padic/constructor.hpp"
#include "padic/spectra.hpp"

namespace padic {

using Json = nlohmann::ordered_json;

Json to_json(const ProblemParams& params);
Json to_json(const DeviationReport& report);
Json to_json(const DecaySeries& series);
Json to_json(const WitnessCertificate& cert, bool include_N);
Json to_json(const CoverResult& cover, bool include_N);
Json to_json(const DensityCensus& census);

void write_csv(std::ostream& os, const DeviationReport& report);
void write_csv(std::ostream& os, const DecaySeries& series);
void write_csv(std::ostream& os, const std::vector<WitnessCertificate>& certs);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

const char* to_string(CensusKind kind);
const char* to_string(SumKind kind);

}  // namespace padic
