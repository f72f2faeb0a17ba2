#include "pvfilter/power_counting.hpp"

#include "pvfilter/errors.hpp"

namespace pvfilter {

std::vector<std::string> validate(const DiagramSpec& diagram) {
  if (diagram.loops < 1) throw InvalidArgument(diagram.name + ": loops must be >= 1");
  if (diagram.fermion_internal < 0 || diagram.photon_internal < 0) {
    throw InvalidArgument(diagram.name + ": line counts must be non-negative");
  }
  std::vector<std::string> warnings;
  if (diagram.photon_internal > diagram.fermion_internal) {
    warnings.push_back(diagram.name +
                       ": more photon than fermion lines; no loop of QED has this");
  }
  return warnings;
}

int fermion_line_falloff(int n_reg) {
  if (n_reg < 0) throw InvalidArgument("n_reg must be non-negative");
  return 1 + n_reg;
}

int superficial_degree(const DiagramSpec& diagram, int n_reg) {
  validate(diagram);
  return 4 * diagram.loops - fermion_line_falloff(n_reg) * diagram.fermion_internal -
         2 * diagram.photon_internal;
}

int minimal_regulators(const DiagramSpec& diagram) {
  validate(diagram);
  if (diagram.fermion_internal == 0) {
    throw NoFermionLines(diagram.name + ": photon lines are not regularised");
  }
  int n = 0;
  while (superficial_degree(diagram, n) >= 0) ++n;
  return n;
}

std::vector<DiagramSpec> canonical_diagrams() {
  return {{"tadpole", 1, 1, 0},
          {"self-mass", 1, 1, 1},
          {"vacuum-polarisation", 1, 2, 0},
          {"vertex", 1, 2, 1}};
}

std::vector<ClaimRow> claim_table() {
  constexpr int kClaimed[] = {4, 2, 2, 1};
  std::vector<ClaimRow> rows;
  int i = 0;
  for (const DiagramSpec& d : canonical_diagrams()) {
    const int minimal = minimal_regulators(d);
    rows.push_back({d, minimal, kClaimed[i], minimal == kClaimed[i]});
    ++i;
  }
  return rows;
}

}  // namespace pvfilter
