#include "padic/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "padic/arith_digits.hpp"
#include "padic/census.hpp"
#include "padic/constructor.hpp"
#include "padic/errors.hpp"
#include "padic/report.hpp"
#include "padic/spectra.hpp"

namespace padic::cli {
namespace {

Json params_echo(const RunConfig& c, bool with_h) {
  Json j{{"p", c.p}};
  if (with_h) j["h"] = c.h;
  j["m"] = c.m;
  j["d"] = c.d;
  j["a"] = c.a;
  return j;
}

PhasePoint phase_point(const RunConfig& c) {
  return PhasePoint{Phase::parse(c.alpha), Phase::parse(c.beta), Phase::parse(c.gamma), Base(c.base)};
}

SumKind sum_kind(const std::string& k) {
  if (k == "squares") return SumKind::squares;
  if (k == "primes") return SumKind::primes;
  throw ParameterError("--kind must be 'squares' or 'primes', got '" + k + "'");
}

Json phase_echo(const RunConfig& c, const PhasePoint& pp) {
  return Json{{"kind", c.kind},
              {"base", c.base},
              {"alpha", pp.alpha.to_string()},
              {"beta", pp.beta.to_string()},
              {"gamma", pp.gamma.to_string()}};
}

// Scalar results in CSV are a one-column table.
void emit(std::ostream& out, Format fmt, const Json& config, const Json& result,
          const std::function<void(std::ostream&)>& csv_body) {
  if (fmt == Format::json) {
    out << Json{{"config", config}, {"result", result}}.dump(2) << '\n';
    return;
  }
  out << "# config: " << config.dump() << '\n';
  csv_body(out);
}

void run_subcommand(const RunConfig& c, std::ostream& out) {
  const ResourceLimits limits = ResourceLimits::from_env();
  const CensusOptions opts{c.threads, limits};
  Json config{{"subcommand", c.subcommand}};
  const std::string& sc = c.subcommand;

  if (sc == "valuation") {
    const Natural n = Natural::from_string(c.n);
    const Prime p(c.p);
    const Natural floors = legendre_valuation_floors(n, p);
    const Natural by_digits = legendre_valuation_digits(n, p);
    ensure(floors == by_digits, "floor and digit forms of Legendre's formula disagree");
    config["n"] = c.n;
    config["p"] = c.p;
    emit(out, c.format, config, Json{{"valuation", floors.to_string()}},
         [&](std::ostream& os) { os << "valuation\n" << floors.to_string() << '\n'; });
  } else if (sc == "zeros") {
    const Natural z = trailing_zeros_factorial(Natural::from_string(c.n));
    config["n"] = c.n;
    emit(out, c.format, config, Json{{"zeros", z.to_string()}},
         [&](std::ostream& os) { os << "zeros\n" << z.to_string() << '\n'; });
  } else if (sc == "count-powers" || sc == "count-primes") {
    const bool powers = sc == "count-powers";
    const ProblemParams pp(c.p, powers ? c.h : 1, c.m, c.d, c.a);
    const ResidueHistogram hist = powers ? count_power_residues(pp, c.x, opts) : count_prime_residues(pp, c.x, opts);
    const DeviationReport rep = deviation_report(hist);
    config["params"] = params_echo(c, powers);
    config["x"] = c.x;
    emit(out, c.format, config, to_json(rep), [&](std::ostream& os) { write_csv(os, rep); });
  } else if (sc == "count-tj") {
    const ProblemParams pp(c.p, 2, c.m, c.d, c.a);
    const std::vector<std::uint64_t> t = count_Tj_all(pp, c.x, c.r, opts);
    std::uint64_t sum = 0;
    for (const auto v : t) sum += v;
    const std::uint64_t direct = count_power_residues(pp, c.x, opts).counts[c.r];
    ensure(sum == direct, "sum of T_j must equal the direct residue count");
    config["params"] = params_echo(c, false);
    config["x"] = c.x;
    config["r"] = c.r;
    emit(out, c.format, config, Json{{"mprime", pp.mprime()}, {"T", t}, {"sum", sum}, {"direct_count", direct}},
         [&](std::ostream& os) {
           os << "j,count\n";
           for (std::size_t j = 0; j < t.size(); ++j) os << j << ',' << t[j] << '\n';
         });
  } else if (sc == "expsum") {
    const PhasePoint pp = phase_point(c);
    const SumKind kind = sum_kind(c.kind);
    const std::complex<double> s =
        kind == SumKind::squares ? exp_sum_squares(c.x, pp, c.threads) : exp_sum_primes(c.x, pp, c.threads, limits);
    config["phase"] = phase_echo(c, pp);
    config["x"] = c.x;
    const double mag = std::abs(s);
    const double norm = c.x == 0 ? 0.0 : mag / static_cast<double>(c.x);
    emit(out, c.format, config,
         Json{{"x", c.x}, {"re", s.real()}, {"im", s.imag()}, {"magnitude", mag}, {"normalized", norm}},
         [&](std::ostream& os) {
           os << "x,re,im,magnitude,normalized\n"
              << c.x << ',' << format_double(s.real()) << ',' << format_double(s.imag()) << ','
              << format_double(mag) << ',' << format_double(norm) << '\n';
         });
  } else if (sc == "decay") {
    const PhasePoint pp = phase_point(c);
    const DecaySeries series = decay_profile(sum_kind(c.kind), pp, c.xmin, c.xmax, limits);
    config["phase"] = phase_echo(c, pp);
    config["xmin"] = c.xmin;
    config["xmax"] = c.xmax;
    const Json summary = to_json(series);
    emit(out, c.format, config, summary, [&](std::ostream& os) {
      write_csv(os, series);
      Json tail{{"fitted_slope", summary["fitted_slope"]},
                {"sigma_hat", summary["sigma_hat"]},
                {"dropped_checkpoints", summary["dropped_checkpoints"]}};
      os << "# summary: " << tail.dump() << '\n';
    });
  } else if (sc == "witness") {
    const ProblemParams pp(c.p, c.h, c.m, c.d, c.a);
    const WitnessCertificate cert = witness_certificate(choose_parameters(pp), c.j);
    config["params"] = params_echo(c, true);
    config["j"] = c.j;
    config["with_N"] = c.with_N;
    emit(out, c.format, config, to_json(cert, c.with_N), [&](std::ostream& os) { write_csv(os, {cert}); });
  } else if (sc == "cover") {
    const ProblemParams pp(c.p, c.h, c.m, c.d, c.a);
    const CoverResult cover = residue_cover(pp, c.threads);
    config["params"] = params_echo(c, true);
    config["with_N"] = c.with_N;
    emit(out, c.format, config, to_json(cover, c.with_N), [&](std::ostream& os) {
      write_csv(os, cover.certificates);
      os << "# c_explicit: " << cover.c_explicit.to_string()
         << "\n# within_explicit_bound: " << (cover.within_explicit_bound ? "true" : "false") << '\n';
    });
  } else if (sc == "small-range") {
    const ProblemParams pp(c.p, c.h, c.m, c.d, c.a);
    const Natural bound = c.bound ? Natural::from_string(*c.bound) : small_range_bound(pp);
    const std::set<std::uint64_t> res = small_range_residues(pp, bound);
    config["params"] = params_echo(c, true);
    config["bound"] = c.bound ? Json(*c.bound) : Json("default");
    const bool full = res.size() == pp.m();
    emit(out, c.format, config,
         Json{{"bound", bound.to_string()}, {"residues", res}, {"covers_all", full}},
         [&](std::ostream& os) {
           os << "r\n";
           for (const auto r : res) os << r << '\n';
         });
  } else if (sc == "density") {
    const ProblemParams pp(c.p, c.h, c.m, c.d, c.a);
    const DensityCensus dc = density_smoke_check(pp, Natural::from_string(c.x_big), c.u, c.max_candidates);
    config["params"] = params_echo(c, true);
    config["x"] = c.x_big;
    config["u"] = c.u ? Json(*c.u) : Json("minimal");
    config["max_candidates"] = c.max_candidates;
    emit(out, c.format, config, to_json(dc), [&](std::ostream& os) {
      os << "r,witnesses\n";
      for (std::size_t r = 0; r < dc.residue_counts.size(); ++r) os << r << ',' << dc.residue_counts[r] << '\n';
    });
  } else if (sc == "c-bound") {
    const ProblemParams pp(c.p, c.h, c.m, c.d, 0);
    const Natural bound = explicit_C_bound(pp);
    config["params"] = Json{{"p", c.p}, {"h", c.h}, {"m", c.m}, {"d", c.d}};
    emit(out, c.format, config, Json{{"c_bound", bound.to_string()}},
         [&](std::ostream& os) { os << "c_bound\n" << bound.to_string() << '\n'; });
  } else {
    throw ParameterError("unknown subcommand '" + sc + "'");
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.threads == 0) throw ParameterError("--threads must be positive");
    if (config.output.empty()) {
      run_subcommand(config, out);
    } else {
      std::ostringstream buffer;
      run_subcommand(config, buffer);
      std::ofstream file(config.output, std::ios::binary);
      if (!file) throw ParameterError("cannot open output file '" + config.output + "'");
      file << buffer.str();
    }
    return kOk;
  } catch (const ParameterError& e) {
    err << "error: invalid parameters: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const DegeneratePhaseError& e) {
    err << "error: " << e.what() << '\n';
    return kDegeneratePhase;
  } catch (const ResourceError& e) {
    err << "error: resource cap: " << e.what() << '\n';
    return kResourceCap;
  } catch (const InternalError& e) {
    err << "error: internal assertion: " << e.what() << '\n';
    return kInternalError;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string format = "csv";
  CLI::App app{"Prime-power valuations of factorials: censuses, exponential sums, witnesses", "padic"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", c.threads, "Partition count for parallel runs")->check(CLI::PositiveNumber);
    sub->add_option("--output,-o", c.output, "Output file (default: standard output)");
  };
  auto add_params = [&](CLI::App* sub, bool with_h, bool with_progression) {
    sub->add_option("--p", c.p, "Prime p")->required();
    if (with_h) sub->add_option("--h", c.h, "Power exponent h");
    sub->add_option("--m", c.m, "Target modulus m")->required();
    if (with_progression) {
      sub->add_option("--d", c.d, "Progression modulus d");
      sub->add_option("--a", c.a, "Progression residue a, 0 <= a < d");
    }
  };
  auto add_phase = [&](CLI::App* sub) {
    sub->add_option("--kind", c.kind, "squares or primes")->check(CLI::IsMember({"squares", "primes"}));
    sub->add_option("--base,--b", c.base, "Digit base b");
    sub->add_option("--alpha", c.alpha, "Digit-sum phase (cycles), e.g. 1/2 or 0.25");
    sub->add_option("--beta", c.beta, "Quadratic/linear phase (cycles)");
    sub->add_option("--gamma", c.gamma, "Linear phase for squares (cycles)");
  };

  auto* valuation = app.add_subcommand("valuation", "e_p(n!) by Legendre's formula");
  valuation->add_option("--n", c.n, "n (decimal)")->required();
  valuation->add_option("--p", c.p, "Prime p")->required();
  auto* zeros = app.add_subcommand("zeros", "Trailing zeros of n!");
  zeros->add_option("--n", c.n, "n (decimal)")->required();

  auto* powers = app.add_subcommand("count-powers", "Residues of e_p(n^h!) mod m over n < x, n = a (mod d)");
  add_params(powers, true, true);
  powers->add_option("--x", c.x, "Exclusive upper bound")->required();
  auto* primes = app.add_subcommand("count-primes", "Residues of e_p(q!) mod m over primes q < x, q = a (mod d)");
  add_params(primes, false, true);
  primes->add_option("--x", c.x, "Exclusive upper bound")->required();
  auto* tj = app.add_subcommand("count-tj", "T_j decomposition of the h = 2 census");
  add_params(tj, false, true);
  tj->add_option("--x", c.x, "Exclusive upper bound")->required();
  tj->add_option("--r", c.r, "Target residue r")->required();

  auto* expsum = app.add_subcommand("expsum", "Single exponential sum evaluation");
  add_phase(expsum);
  expsum->add_option("--x", c.x, "Exclusive upper bound")->required();
  auto* decay = app.add_subcommand("decay", "Checkpointed exponential sum with log-log slope fit");
  add_phase(decay);
  decay->add_option("--xmin", c.xmin, "First checkpoint");
  decay->add_option("--xmax", c.xmax, "Last checkpoint bound");

  auto* witness = app.add_subcommand("witness", "One certified witness t(p^(k+j))");
  add_params(witness, true, true);
  witness->add_option("--j", c.j, "Step j, 0 <= j < m");
  witness->add_flag("--with-N", c.with_N, "Include N = n^h in the output");
  auto* cover = app.add_subcommand("cover", "Witnesses for every residue class mod m");
  add_params(cover, true, true);
  cover->add_flag("--with-N", c.with_N, "Include N = n^h in the output");
  auto* small = app.add_subcommand("small-range", "Residues reached by n below a small bound");
  add_params(small, true, true);
  small->add_option("--bound", c.bound, "Exclusive bound (default: ceil(p^(1/h) + (m-2) d))");
  auto* density = app.add_subcommand("density", "Census of constructive witnesses below x");
  add_params(density, true, true);
  density->add_option("--x", c.x_big, "Exclusive bound (decimal)")->required();
  density->add_option("--u", c.u, "Block size exponent u (default: minimal)");
  density->add_option("--max-candidates", c.max_candidates, "Candidate cap");
  auto* cbound = app.add_subcommand("c-bound", "Closed-form bound C(p, h, d, m)");
  cbound->add_option("--p", c.p, "Prime p")->required();
  cbound->add_option("--h", c.h, "Power exponent h");
  cbound->add_option("--m", c.m, "Target modulus m")->required();
  cbound->add_option("--d", c.d, "Progression modulus d");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) add_common(sub);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: invalid parameters: " << e.what() << '\n';
    return kInvalidParameters;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  c.format = format == "json" ? Format::json : Format::csv;
  return run(c, out, err);
}

}  // namespace padic::cli
