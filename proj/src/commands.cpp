#include "pvfilter/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "pvfilter/contour.hpp"
#include "pvfilter/errors.hpp"
#include "pvfilter/oscillator.hpp"
#include "pvfilter/power_counting.hpp"
#include "pvfilter/reg_algebra.hpp"
#include "pvfilter/verify.hpp"

namespace pvfilter {

namespace {

constexpr double kOracleEpsilon = 1e-4;
constexpr double kOracleCutoff = 1e5;
constexpr double kSumRuleTolerance = 1e-12;
constexpr double kResponseTolerance = 1e-8;
constexpr int kBornOrders = 6;
constexpr int kCountMaxRegulators = 5;

std::string row(std::initializer_list<std::string> cells) {
  std::string line;
  for (const std::string& c : cells) {
    if (!line.empty()) line += ',';
    line += c;
  }
  return line + '\n';
}

std::vector<double> checked_grid(const RunConfig& config) {
  if (config.tau_steps <= 0) throw ConfigError("empty tau grid (tau_steps <= 0)");
  if (config.tau_steps > 1 && !(config.tau_max > config.tau_min)) {
    throw ConfigError("tau_max must exceed tau_min");
  }
  return config.tau_grid();
}

int n_max_of(const RunConfig& config) {
  if (config.n_max < 2 || config.n_max > 64) throw ConfigError("n_max must be in [2, 64]");
  return static_cast<int>(config.n_max);
}

DriveSignal drive_of(const RunConfig& config, double amplitude) {
  DriveSignal d = DriveSignal::gaussian(amplitude, config.pulse_T);
  d.validate();
  return d;
}

// Runs body, mapping library and config errors to exit code 2.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

int report_suite(const std::vector<verify::Check>& checks, std::ostream& out, std::ostream& err) {
  out << verify::format_report(checks);
  const auto failed = std::count_if(checks.begin(), checks.end(),
                                    [](const verify::Check& c) { return !c.passed; });
  err << checks.size() - failed << " passed, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

int cmd_decompose(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MassLadder ladder(config.masses);
    const PartialFractionDecomposition pfd = decompose(ladder);
    out << "K,M_K,c_K,eps_K,sigma_K\n";
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      out << row({std::to_string(k), format_number(ladder[k]), format_number(pfd.coefficients[k]),
                  pfd.signs[k] > 0 ? "+1" : "-1", format_number(pfd.weights[k])});
    }
    const double tol = config.tol.value_or(kSumRuleTolerance);
    const std::vector<double> residuals = sum_rule_residuals(pfd, ladder);
    out << "\nj,sum_rule_residual\n";
    bool ok = true;
    for (std::size_t j = 0; j < residuals.size(); ++j) {
      out << row({std::to_string(j), format_number(residuals[j])});
      ok = ok && residuals[j] <= tol;
    }
    if (!ok) err << "sum rules exceed tolerance " << format_number(tol) << '\n';
    return ok ? kExitOk : kExitFailure;
  });
}

int cmd_prop(const RunConfig& config, const CommandOptions& options, std::ostream& out,
             std::ostream& err) {
  return guarded(err, [&] {
    const MassLadder ladder(config.masses);
    const std::vector<double> taus = checked_grid(config);
    const std::size_t n = ladder.regulators();
    const std::vector<PropagatorValue> table =
        propagator_table(ladder, config.contour, 0, n, taus);
    out << "tau,re,im\n";
    for (const PropagatorValue& v : table) {
      out << row({format_number(v.tau), format_number(v.value.real()),
                  format_number(v.value.imag())});
    }
    if (!options.oracle) return kExitOk;

    const double tol = options.tol.value_or(
        config.tol.value_or(oracle_tolerance(ladder, kOracleEpsilon, kOracleCutoff)));
    const bool real_axis =
        config.contour == Contour::kFeynman || config.contour == Contour::kRetarded;
    double worst = 0.0;
    std::size_t skipped = 0;
    for (const PropagatorValue& v : table) {
      // The bare real-axis integral has no value at the jump.
      if (real_axis && n == 0 && v.tau == 0.0) {
        ++skipped;
        continue;
      }
      const Complex numeric = numeric_contour_oracle(ladder, config.contour, 0, n, v.tau,
                                                     kOracleEpsilon, kOracleCutoff);
      worst = std::max(worst, std::abs(numeric - v.value));
    }
    err << "oracle: max |residue - quadrature| = " << format_number(worst)
        << ", tolerance " << format_number(tol);
    if (skipped > 0) err << ", skipped " << skipped << " point(s) at tau = 0";
    err << '\n';
    return worst <= tol ? kExitOk : kExitFailure;
  });
}

int cmd_respond(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FilterSystem system(config.omega0, config.omega1);
    const int n_max = n_max_of(config);
    const std::vector<double> taus = checked_grid(config);
    const double tol = config.tol.value_or(kResponseTolerance);
    out << "tau,re_resp,im_resp,re_kubo,im_kubo,absdiff\n";
    double worst = 0.0;
    for (double tau : taus) {
      const Complex resp = response_function(system, tau);
      const Complex kubo =
          tau > 0.0 ? Complex(0.0, 1.0) * kubo_commutator(system, n_max, tau) : Complex(0.0, 0.0);
      const double diff = std::abs(resp - kubo);
      worst = std::max(worst, diff);
      out << row({format_number(tau), format_number(resp.real()), format_number(resp.imag()),
                  format_number(kubo.real()), format_number(kubo.imag()), format_number(diff)});
    }
    err << "max absdiff " << format_number(worst) << ", tolerance " << format_number(tol) << '\n';
    return worst <= tol ? kExitOk : kExitFailure;
  });
}

int cmd_born(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FilterSystem system(config.omega0, config.omega1);
    const DriveSignal drive = drive_of(config, config.v0);
    const double step = config.step();
    const Complex exact = evolve_transfer(system, drive, drive.t_min, drive.t_max, step)(0, 0);
    const std::vector<Complex> terms = born_series(system, drive, kBornOrders, step);
    out << "order,re_term,im_term,re_partial,im_partial,re_exact,im_exact,residual\n";
    Complex partial(0.0, 0.0);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      partial += terms[k];
      out << row({std::to_string(k), format_number(terms[k].real()),
                  format_number(terms[k].imag()), format_number(partial.real()),
                  format_number(partial.imag()), format_number(exact.real()),
                  format_number(exact.imag()),
                  format_number(std::abs(exact - partial) / std::abs(exact))});
    }
    return kExitOk;
  });
}

int cmd_count(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<DiagramSpec> diagrams =
        config.diagrams.empty() ? canonical_diagrams() : config.diagrams;
    // Validate everything before printing so a bad spec yields no partial table.
    for (const DiagramSpec& d : diagrams) {
      for (const std::string& w : validate(d)) err << "warning: " << w << '\n';
    }
    out << "diagram,L,F,B,minimal_N";
    for (int n = 0; n <= kCountMaxRegulators; ++n) out << ",D_N" << n;
    out << '\n';
    bool input_error = false;
    for (const DiagramSpec& d : diagrams) {
      std::string minimal;
      try {
        minimal = std::to_string(minimal_regulators(d));
      } catch (const NoFermionLines& e) {
        minimal = "error";
        err << "error: " << d.name << ": " << e.what() << '\n';
        input_error = true;
      }
      out << d.name << ',' << d.loops << ',' << d.fermion_internal << ',' << d.photon_internal
          << ',' << minimal;
      for (int n = 0; n <= kCountMaxRegulators; ++n) out << ',' << superficial_degree(d, n);
      out << '\n';
    }
    if (input_error) return static_cast<int>(kExitInputError);

    bool claims_hold = true;
    for (const ClaimRow& r : claim_table()) {
      claims_hold = claims_hold && r.satisfied;
      if (!r.satisfied) {
        err << "claim mismatch: " << r.diagram.name << " needs " << r.minimal << ", claimed "
            << r.claimed << '\n';
      }
    }
    return claims_hold ? static_cast<int>(kExitOk) : static_cast<int>(kExitFailure);
  });
}

int cmd_dirac_verify(const RunConfig& config, const CommandOptions& options,
                     std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    verify::Options o;
    o.only = "dirac_algebra";
    o.tolerance = options.tol ? options.tol : config.tol;
    return report_suite(verify::run_suite(o), out, err);
  });
}

int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    verify::Options o;
    o.only = options.only;
    o.tolerance = options.tol ? options.tol : config.tol;
    return report_suite(verify::run_suite(o), out, err);
  });
}

int run_command(const std::string& name, const RunConfig& config,
                const CommandOptions& options, std::ostream& out, std::ostream& err) {
  if (name == "decompose") return cmd_decompose(config, out, err);
  if (name == "prop") return cmd_prop(config, options, out, err);
  if (name == "respond") return cmd_respond(config, out, err);
  if (name == "born") return cmd_born(config, out, err);
  if (name == "count") return cmd_count(config, out, err);
  if (name == "dirac-verify") return cmd_dirac_verify(config, options, out, err);
  if (name == "verify") return cmd_verify(config, options, out, err);
  err << "error: unknown command '" << name << "'\n";
  return kExitInputError;
}

}  // namespace pvfilter
