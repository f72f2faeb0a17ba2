#pragma once

#include <string>
#include <vector>

namespace pvfilter {

/// Line content of a QED (sub)diagram for power counting.
struct DiagramSpec {
  std::string name;
  int loops = 1;
  int fermion_internal = 0;
  int photon_internal = 0;
};

/// Throws InvalidArgument for loops < 1 or negative line counts. Returns
/// warnings for suspicious but legal specs (more photon than fermion lines).
std::vector<std::string> validate(const DiagramSpec& diagram);

/// Fermion propagator falloff exponent with n_reg regulators: 1 + n_reg.
int fermion_line_falloff(int n_reg);

/// D = 4 L - (1 + n_reg) F_i - 2 B_i. Negative means superficially convergent.
int superficial_degree(const DiagramSpec& diagram, int n_reg);

/// Smallest n_reg with negative degree. Throws NoFermionLines if F_i = 0,
/// since only fermion lines are regularised.
int minimal_regulators(const DiagramSpec& diagram);

struct ClaimRow {
  DiagramSpec diagram;
  int minimal = 0;
  int claimed = 0;
  bool satisfied = false;
};

/// Tadpole, self-mass, vacuum polarisation and vertex correction with the
/// regulator counts they are known to need: 4, 2, 2 and 1.
std::vector<DiagramSpec> canonical_diagrams();
std::vector<ClaimRow> claim_table();

}  // namespace pvfilter
