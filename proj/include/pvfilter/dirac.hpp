#pragma once

#include <Eigen/Dense>
#include <array>

#include "pvfilter/contour.hpp"
#include "pvfilter/reg_algebra.hpp"

namespace pvfilter {

using SpinorMatrix = Eigen::Matrix4cd;

/// gamma^0 ... gamma^3 in the Dirac representation, metric (+,-,-,-).
struct GammaSet {
  std::array<SpinorMatrix, 4> gamma;

  static GammaSet dirac();
  const SpinorMatrix& operator[](int mu) const { return gamma[mu]; }
};

/// Largest entry of {gamma^mu, gamma^nu} - 2 g^{mu nu} over all 16 pairs.
double clifford_residual(const GammaSet& gammas);

/// Energy p0 (may be complex) and contravariant spatial momentum.
struct FourMomentum {
  Complex p0;
  std::array<double, 3> p{};

  /// p^2 = p0^2 - |p|^2.
  Complex square() const;
};

/// gamma^0 p_0 - gamma . p
SpinorMatrix slash(const GammaSet& gammas, const FourMomentum& p);

/// Matrix-argument G_f^(K,L)(pslash), evaluated through the rationalised
/// factors M_l (M_l + pslash) / (M_l^2 - p^2). Zero for K > L.
SpinorMatrix g_f_matrix(const MassLadder& ladder, std::size_t K, std::size_t L,
                        const FourMomentum& p, const GammaSet& gammas);

/// Both ladder recursions with z -> pslash, Frobenius norm relative to
/// ||G_f^(K,L)(pslash)||. Requires K < L.
double matrix_recursion_residual(const MassLadder& ladder, std::size_t K,
                                 std::size_t L, const FourMomentum& p,
                                 const GammaSet& gammas);

/// (M_0 - pslash)(1 - pslash/M_1) ... (1 - pslash/M_N), the momentum-space
/// symbol of the single-field filter equation.
SpinorMatrix inverse_filter_polynomial(const MassLadder& ladder,
                                       const FourMomentum& p,
                                       const GammaSet& gammas);

/// Closed-contour p0 integral of G_f^(L,K)(pslash) at fixed spatial
/// momentum, by residues at p0 = +/- E_l. Equals delta_KL gamma^0.
SpinorMatrix equal_time_anticommutator(const MassLadder& ladder, std::size_t K,
                                       std::size_t L,
                                       const std::array<double, 3>& pvec,
                                       const GammaSet& gammas);

/// p0 integral of G_f^(0,N)(pslash) e^{-i p0 tau} over a contour.
/// kFeynman takes positive-energy poles for tau > 0 and negative-energy
/// poles for tau < 0; kPlus / kMinus / kClosed use the closed-contour
/// normalisation restricted to positive / negative / all poles.
/// Throws TauZeroUndefined for N = 0 Feynman at tau = 0.
SpinorMatrix contraction_time_domain(const MassLadder& ladder, Contour contour,
                                     const std::array<double, 3>& pvec,
                                     double tau, const GammaSet& gammas);

/// sum_l sigma_l (eps_l sigma_l) G_f^(l,l)(pslash): the out/in field
/// anticommutator assembled mode by mode from the conjugate weights.
SpinorMatrix mode_sum_filter(const MassLadder& ladder, const FourMomentum& p,
                             const GammaSet& gammas);

}  // namespace pvfilter
