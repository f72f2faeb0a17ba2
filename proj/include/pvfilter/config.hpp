#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pvfilter/contour.hpp"
#include "pvfilter/power_counting.hpp"

namespace pvfilter {

/// Settings shared by all subcommands. Defaults reproduce the reference
/// runs: ladder {1, 10}, tau grid [0, 10] x 200, Omega = (1, 10), v0 = 0.1,
/// T = 1, n_max = 8.
struct RunConfig {
  std::vector<double> masses{1.0, 10.0};
  Contour contour = Contour::kFeynman;
  double tau_min = 0.0;
  double tau_max = 10.0;
  long long tau_steps = 200;
  double omega0 = 1.0;
  double omega1 = 10.0;
  double v0 = 0.1;
  double pulse_T = 1.0;
  long long n_max = 8;
  /// Integrator step; pulse_T / 200 when unset.
  std::optional<double> ode_step;
  /// Empty means the four canonical one-loop diagrams.
  std::vector<DiagramSpec> diagrams;
  std::optional<double> tol;

  double step() const { return ode_step.value_or(pulse_T / 200.0); }
  /// tau_steps points from tau_min to tau_max inclusive.
  std::vector<double> tau_grid() const;
};

/// Sets one key. Throws ConfigError for unknown keys or unparsable values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// key=value per line, '#' starts a comment. Duplicate keys are rejected.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// "name:L,F,B;name:L,F,B"
std::vector<DiagramSpec> parse_diagrams(std::string_view text);

}  // namespace pvfilter
