#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "pvfilter/reg_algebra.hpp"

namespace pvfilter {

using Matrix = Eigen::MatrixXcd;

/// Physical oscillator Omega_0 filtered by one fictitious oscillator
/// Omega_1 > Omega_0. sigma = 1 / sqrt(1 - Omega_0 / Omega_1).
class FilterSystem {
 public:
  FilterSystem(double omega0, double omega1);

  double omega0() const { return omega0_; }
  double omega1() const { return omega1_; }
  double sigma() const { return sigma_; }
  /// The two-mass ladder {Omega_0, Omega_1}.
  MassLadder ladder() const { return MassLadder({omega0_, omega1_}); }

 private:
  double omega0_;
  double omega1_;
  double sigma_;
};

/// Gaussian drive v(t) = v0 exp(-(t - center)^2 / (2 T^2)) on [t_min, t_max].
struct DriveSignal {
  double amplitude = 0.0;
  double width = 1.0;
  double center = 0.0;
  double t_min = -8.0;
  double t_max = 8.0;

  /// Window center +/- 8 T. Throws InvalidArgument for T <= 0.
  static DriveSignal gaussian(double amplitude, double width, double center = 0.0);

  double operator()(double t) const;
  /// Integral of v over the real line, v0 T sqrt(2 pi).
  double area() const;
  /// Throws InvalidArgument unless T > 0 and the window covers 8 T per side.
  void validate() const;
};

/// Two-mode Fock basis {|n0, n1> : n0 + n1 <= n_max}, ordered by total
/// number of quanta, then lexicographically in (n0, n1):
/// |0,0>, |0,1>, |1,0>, |0,2>, |1,1>, |2,0>, ...
class FockBasis {
 public:
  explicit FockBasis(int n_max);

  int n_max() const { return n_max_; }
  int dimension() const { return static_cast<int>(states_.size()); }
  int index(int n0, int n1) const;
  std::pair<int, int> state(int i) const { return states_[i]; }
  int total(int i) const { return states_[i].first + states_[i].second; }

 private:
  int n_max_;
  std::vector<std::pair<int, int>> states_;
};

struct OperatorMatrix {
  int n_max = 0;
  Matrix matrix;
};

struct FockOperators {
  OperatorMatrix a0, a1, a0_dag, a1_dag;
};

/// a_(0), a_(1) and b^dag_(0), b^dag_(1), mixtures of the two oscillators
/// with [a_(L), b^dag_(K)] = delta_LK.
struct DualOperators {
  OperatorMatrix a_0, a_1, b0_dag, b1_dag;
};

/// Diagonal (-1)^{n1}: the indefinite metric of the filter.
struct SignOperator {
  Eigen::VectorXd diagonal;
  Matrix dense() const;
};

FockOperators build_fock_operators(int n_max);
DualOperators build_dual_operators(const FilterSystem& system, int n_max);
SignOperator sign_operator(int n_max);

/// Omega0 b0^ a0 + Omega1 b1^ a1 - Omega1 b1^ a0 - v b0^ a1.
OperatorMatrix hamiltonian_matrix(const FilterSystem& system, int n_max, double v);
/// Omega0 a0^dag a0 + Omega1 a1^dag a1.
OperatorMatrix free_oscillator_hamiltonian(const FilterSystem& system, int n_max);

/// X^ddag = I X^dag I.
OperatorMatrix pseudo_adjoint(const OperatorMatrix& x, const SignOperator& sign);

/// Max-abs deviation of (x - expected) over basis states with at most
/// n_max - 1 quanta, where truncation of the ladder algebra is exact.
double protected_residual(const OperatorMatrix& x, const Matrix& expected);

using TransferMatrix = Eigen::Matrix2cd;

/// Propagates the c-number amplitude pair (A_(0), A_(1)) of the feedback
/// equations
///   (Omega0 - i d/dt) A_(0) = v(t) A_(1)
///   (Omega1 - i d/dt) A_(1) = Omega1 A_(0)
/// from t_i to t_f with a fixed-step fourth-order Magnus integrator.
/// The same matrix is the one-quantum evolution in the dual basis
/// b^dag_(K)|0>. Throws StepTooLarge if step > T / 100.
TransferMatrix evolve_transfer(const FilterSystem& system,
                               const DriveSignal& drive, double t_i, double t_f,
                               double step);

/// delta A_(1)(t) / delta s(t') at tau = t - t'. The residue form is checked
/// against the delta-source solution of the free equations; OracleMismatch
/// is thrown if they disagree by more than 1e-8.
Complex response_function(const FilterSystem& system, double tau);

/// Coefficient c of [a_(1)(tau), b^dag_(0)(0)] = c * identity, built from
/// interaction-picture matrices. Throws NonScalarCommutator otherwise.
Complex kubo_commutator(const FilterSystem& system, int n_max, double tau);

/// Per-order contributions to the dual-basis amplitude <(0)| U |(0)> from
/// drive.t_min to drive.t_max, expanded in the drive with the regularised
/// kernel Delta_F^(0,1). Entry k is the order-k term.
std::vector<Complex> born_series(const FilterSystem& system,
                                 const DriveSignal& drive, int order,
                                 double step);

/// First-order vacuum-phase loop, -i vbar Delta_F^(0,1)(0). Identically 0.
Complex vacuum_tadpole(const FilterSystem& system, const DriveSignal& drive);
/// Same loop with the bare propagator evaluated at tau -> 0+: equals vbar.
Complex vacuum_tadpole_unregularised(const FilterSystem& system,
                                     const DriveSignal& drive);

/// Block of a Fock operator on the fixed-total sector with n quanta, basis
/// |0,n>, |1,n-1>, ..., |n,0>.
struct SectorMatrix {
  int n_total = 0;
  Matrix matrix;
};

SignOperator sector_sign_operator(int n_total);

/// Interaction-picture S-matrix of -v(t) b^dag_(0)(t) a_(1)(t) restricted to
/// the sector with n_total quanta, integrated over the drive window.
SectorMatrix sector_s_matrix(const FilterSystem& system,
                             const DriveSignal& drive, int n_total,
                             double step);

/// || I S^dag I S - 1 ||_F.
double pseudo_unitarity_defect(const SectorMatrix& s);
/// || S^dag S - 1 ||_F.
double unitarity_defect(const SectorMatrix& s);

/// <(0)| U |(0)> recovered from the one-quantum interaction-picture S-matrix.
Complex dual_amplitude_from_s(const FilterSystem& system,
                              const DriveSignal& drive, const SectorMatrix& s);

}  // namespace pvfilter
