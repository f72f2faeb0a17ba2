#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pvfilter::verify {

/// One invariant check. Upper-bound checks pass when residual <= tolerance;
/// lower-bound checks pass when residual > tolerance and ignore overrides.
struct Check {
  std::string module;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;
  bool passed = false;
};

struct Options {
  /// Restrict to one module: reg_algebra, contour_propagators,
  /// oscillator_filter, dirac_algebra or divergence_counter.
  std::optional<std::string> only;
  /// Replaces the tolerance of every upper-bound check.
  std::optional<double> tolerance;
};

const std::vector<std::string>& module_names();

/// Runs the invariant suite. Deterministic: fixed seeds and summation order.
/// Throws InvalidArgument for an unknown module name.
std::vector<Check> run_suite(const Options& options = {});

/// "module.name,PASS|FAIL,residual" per line, residual with 17 digits.
std::string format_report(const std::vector<Check>& checks);

bool all_passed(const std::vector<Check>& checks);

}  // namespace pvfilter::verify
