#pragma once

#include <string_view>
#include <vector>

#include "pvfilter/reg_algebra.hpp"

namespace pvfilter {

/// Integration contours in the complex energy plane.
///
/// kFeynman and kRetarded run along the real axis above positive-energy
/// poles; in the oscillator model (all poles positive) they coincide.
/// kClosed encircles every pole clockwise with measure dw/(2 pi i), so that
/// its value at tau = 0 is sum_l c_l. kPlus and kMinus carry the same
/// normalisation restricted to positive / negative energy poles, so
/// kPlus + kMinus == kClosed.
enum class Contour { kFeynman, kRetarded, kClosed, kPlus, kMinus };

std::string_view contour_name(Contour contour);
/// Accepts FEYNMAN, RETARDED, CLOSED, PLUS, MINUS (case-insensitive).
Contour parse_contour(std::string_view name);

struct PropagatorValue {
  double tau = 0.0;
  Complex value;
};

/// Residue evaluation of the integral of e^{-i w tau} G_f^(K,L)(w) over the
/// given contour. theta(0) = 0 for the real-axis contours.
Complex time_domain_propagator(const MassLadder& ladder, Contour contour,
                               std::size_t K, std::size_t L, double tau);

std::vector<PropagatorValue> propagator_table(const MassLadder& ladder,
                                              Contour contour, std::size_t K,
                                              std::size_t L,
                                              const std::vector<double>& taus);

/// Independent evaluation of the same integral by explicit quadrature:
/// the real line [-cutoff, cutoff] with poles shifted by -i*epsilon for the
/// real-axis contours, a parameterised circle for the closed ones.
Complex numeric_contour_oracle(const MassLadder& ladder, Contour contour,
                               std::size_t K, std::size_t L, double tau,
                               double epsilon, double cutoff);

/// Agreement expected between the residue and quadrature evaluations:
/// 10 * (epsilon + max_mass / cutoff).
double oracle_tolerance(const MassLadder& ladder, double epsilon,
                        double cutoff);

/// Feynman propagator jump at tau = 0: i * sum_l c_l over the sub-ladder.
Complex jump_at_zero(const MassLadder& ladder, std::size_t K, std::size_t L);

/// Jump of the j-th tau-derivative of the Feynman propagator at tau = 0.
Complex derivative_jump(const MassLadder& ladder, std::size_t K,
                        std::size_t L, int j);

/// Number of leading tau-derivatives (0 ... m-1) of Delta_F^(0,N) that are
/// continuous at tau = 0. Equals N.
int smoothness_order(const MassLadder& ladder);

/// One-sided cutoff integral of G_f^(0,N)(w) over [max_mass + 1, cutoff].
/// Grows like ln(cutoff) for N = 0 and converges for N >= 1.
double cutoff_probe(const MassLadder& ladder, double cutoff);

}  // namespace pvfilter
