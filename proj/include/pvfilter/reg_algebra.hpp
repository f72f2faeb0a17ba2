#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pvfilter {

using Complex = std::complex<double>;

/// Relative guard distance from a pole of G_f below which evaluation fails.
inline constexpr double kPoleGuard = 1e-12;
/// Minimum relative separation |M_i - M_j| / max(M_i, M_j) between masses.
inline constexpr double kMinRelativeSeparation = 1e-9;

/// Ordered set of N+1 distinct positive masses M_0 ... M_N. M_0 is the
/// physical mass, M_1 ... M_N are regulators. Order is kept as given.
class MassLadder {
 public:
  /// Throws InvalidLadder for empty / non-finite / non-positive input and
  /// DegenerateLadder when two masses are closer than kMinRelativeSeparation.
  explicit MassLadder(std::vector<double> masses);

  std::size_t size() const { return masses_.size(); }
  /// Number of regulators N.
  std::size_t regulators() const { return masses_.size() - 1; }
  double operator[](std::size_t i) const { return masses_[i]; }
  double max_mass() const;
  double min_mass() const;
  std::span<const double> masses() const { return masses_; }

  /// Masses M_K ... M_L as a new ladder (K <= L).
  MassLadder sub_ladder(std::size_t K, std::size_t L) const;

 private:
  std::vector<double> masses_;
};

/// G_f^(0,N)(z) = sum_K c_K / (M_K - z) with c_K = eps_K * sigma_K^2.
struct PartialFractionDecomposition {
  std::vector<double> coefficients;
  /// c_K - coefficients[K], the rounding left over from the extended
  /// precision evaluation. Used by reconstruct().
  std::vector<double> corrections;
  std::vector<int> signs;
  std::vector<double> weights;
};

/// M_K^-1 prod_{l=K..L} (1 - z/M_l)^-1 for K <= L, exactly zero for K > L.
Complex g_f_scalar(const MassLadder& ladder, std::size_t K, std::size_t L,
                   Complex z);

/// Closed-form residues of G_f^(0,N) at each M_K.
PartialFractionDecomposition decompose(const MassLadder& ladder);

/// Residual of both recursions in the ladder index, relative to
/// |G_f^(K,L)(z)|. Requires K < L.
double recursion_residual(const MassLadder& ladder, std::size_t K,
                          std::size_t L, Complex z);

/// |sum_K c_K M_K^j| / sum_K |c_K| M_K^j for j = 0 ... N-1.
std::vector<double> sum_rule_residuals(const PartialFractionDecomposition& pfd,
                                       const MassLadder& ladder);

/// sum_K c_K / (M_K - z), the pole expansion of G_f^(0,N). Summed in
/// extended precision: the terms cancel strongly for |z| beyond the ladder.
Complex reconstruct(const PartialFractionDecomposition& pfd,
                    const MassLadder& ladder, Complex z);

/// Raw moment sum_K c_K M_K^j.
double moment(const PartialFractionDecomposition& pfd,
              const MassLadder& ladder, int j);

}  // namespace pvfilter
