#include "pvfilter/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "pvfilter/contour.hpp"
#include "pvfilter/errors.hpp"

namespace pvfilter {

namespace {

constexpr Complex kI(0.0, 1.0);

// Fixed-step fourth-order Magnus integrator for i dU/dt = H(t) U, using the
// two-point Gauss-Legendre nodes. Each step applies exp(Omega) with
// Omega = h/2 (A1 + A2) + sqrt(3)/12 h^2 [A2, A1], A = -i H.
template <class Mat, class Hamiltonian>
Mat magnus4(const Hamiltonian& hamiltonian, double t0, double t1, double step,
            const Mat& identity) {
  if (t1 == t0) return identity;
  const auto n = static_cast<long>(std::ceil((t1 - t0) / step - 1e-9));
  const double h = (t1 - t0) / static_cast<double>(n);
  const double offset = std::sqrt(3.0) / 6.0;
  const double comm = std::sqrt(3.0) / 12.0 * h * h;
  Mat u = identity;
  for (long k = 0; k < n; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    const Mat a1 = -kI * hamiltonian(t + (0.5 - offset) * h);
    const Mat a2 = -kI * hamiltonian(t + (0.5 + offset) * h);
    const Mat omega = (0.5 * h) * (a1 + a2) + comm * (a2 * a1 - a1 * a2);
    const Mat stepper = omega.exp();
    u = stepper * u;
  }
  return u;
}

void check_step(const DriveSignal& drive, double step) {
  if (!(step > 0.0) || step > drive.width / 100.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "step " << step << " exceeds T/100 = " << drive.width / 100.0;
    throw StepTooLarge(os.str());
  }
}

FockOperators ladder_matrices(int n_max) {
  const FockBasis basis(n_max);
  const int dim = basis.dimension();
  FockOperators ops;
  ops.a0 = {n_max, Matrix::Zero(dim, dim)};
  ops.a1 = {n_max, Matrix::Zero(dim, dim)};
  for (int j = 0; j < dim; ++j) {
    const auto [n0, n1] = basis.state(j);
    if (n0 > 0) ops.a0.matrix(basis.index(n0 - 1, n1), j) = std::sqrt(double(n0));
    if (n1 > 0) ops.a1.matrix(basis.index(n0, n1 - 1), j) = std::sqrt(double(n1));
  }
  ops.a0_dag = {n_max, ops.a0.matrix.adjoint()};
  ops.a1_dag = {n_max, ops.a1.matrix.adjoint()};
  return ops;
}

std::vector<int> sector_indices(const FockBasis& basis, int n_total) {
  std::vector<int> out;
  for (int i = 0; i < basis.dimension(); ++i) {
    if (basis.total(i) == n_total) out.push_back(i);
  }
  return out;
}

Matrix sector_block(const Matrix& m, const std::vector<int>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Matrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = m(idx[r], idx[c]);
  }
  return out;
}

}  // namespace

FilterSystem::FilterSystem(double omega0, double omega1)
    : omega0_(omega0), omega1_(omega1) {
  if (!(omega0 > 0.0) || !(omega1 > omega0) || !std::isfinite(omega1)) {
    throw InvalidArgument("filter requires 0 < Omega0 < Omega1");
  }
  sigma_ = 1.0 / std::sqrt(1.0 - omega0 / omega1);
}

DriveSignal DriveSignal::gaussian(double amplitude, double width, double center) {
  if (!(width > 0.0)) throw InvalidArgument("pulse width must be positive");
  return DriveSignal{amplitude, width, center, center - 8.0 * width,
                     center + 8.0 * width};
}

double DriveSignal::operator()(double t) const {
  const double x = (t - center) / width;
  return amplitude * std::exp(-0.5 * x * x);
}

double DriveSignal::area() const {
  return amplitude * width * std::sqrt(2.0 * std::numbers::pi);
}

void DriveSignal::validate() const {
  if (!(width > 0.0)) throw InvalidArgument("pulse width must be positive");
  const double slack = 1e-12 * width;
  if (t_min > center - 8.0 * width + slack || t_max < center + 8.0 * width - slack) {
    throw InvalidArgument("drive window must cover 8 T on each side");
  }
}

FockBasis::FockBasis(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be non-negative");
  for (int n = 0; n <= n_max; ++n) {
    for (int n0 = 0; n0 <= n; ++n0) states_.emplace_back(n0, n - n0);
  }
}

int FockBasis::index(int n0, int n1) const {
  const int n = n0 + n1;
  if (n0 < 0 || n1 < 0 || n > n_max_) {
    throw IndexOutOfRange("Fock state outside the truncated basis");
  }
  return n * (n + 1) / 2 + n0;
}

Matrix SignOperator::dense() const {
  return diagonal.cast<Complex>().asDiagonal();
}

FockOperators build_fock_operators(int n_max) {
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
  return ladder_matrices(n_max);
}

DualOperators build_dual_operators(const FilterSystem& system, int n_max) {
  const FockOperators f = build_fock_operators(n_max);
  const double s = system.sigma();
  DualOperators d;
  d.a_1 = {n_max, s * (f.a0.matrix + f.a1.matrix)};
  d.a_0 = {n_max, f.a0.matrix / s};
  d.b0_dag = {n_max, s * (f.a0_dag.matrix - f.a1_dag.matrix)};
  d.b1_dag = {n_max, f.a1_dag.matrix / s};
  return d;
}

SignOperator sign_operator(int n_max) {
  const FockBasis basis(n_max);
  SignOperator sign{Eigen::VectorXd(basis.dimension())};
  for (int i = 0; i < basis.dimension(); ++i) {
    sign.diagonal(i) = basis.state(i).second % 2 == 0 ? 1.0 : -1.0;
  }
  return sign;
}

OperatorMatrix hamiltonian_matrix(const FilterSystem& system, int n_max, double v) {
  const DualOperators d = build_dual_operators(system, n_max);
  const double w0 = system.omega0();
  const double w1 = system.omega1();
  Matrix h = w0 * d.b0_dag.matrix * d.a_0.matrix + w1 * d.b1_dag.matrix * d.a_1.matrix -
             w1 * d.b1_dag.matrix * d.a_0.matrix - v * d.b0_dag.matrix * d.a_1.matrix;
  return {n_max, std::move(h)};
}

OperatorMatrix free_oscillator_hamiltonian(const FilterSystem& system, int n_max) {
  const FockOperators f = build_fock_operators(n_max);
  return {n_max, system.omega0() * f.a0_dag.matrix * f.a0.matrix +
                     system.omega1() * f.a1_dag.matrix * f.a1.matrix};
}

OperatorMatrix pseudo_adjoint(const OperatorMatrix& x, const SignOperator& sign) {
  if (x.matrix.rows() != x.matrix.cols() ||
      x.matrix.rows() != sign.diagonal.size()) {
    throw DimensionMismatch("operator and sign operator sizes differ");
  }
  const auto d = sign.diagonal.cast<Complex>().asDiagonal();
  return {x.n_max, d * x.matrix.adjoint() * d};
}

double protected_residual(const OperatorMatrix& x, const Matrix& expected) {
  const FockBasis basis(x.n_max);
  if (x.matrix.rows() != basis.dimension() || expected.rows() != x.matrix.rows() ||
      expected.cols() != x.matrix.cols()) {
    throw DimensionMismatch("operator does not match its Fock basis");
  }
  double worst = 0.0;
  for (int j = 0; j < basis.dimension(); ++j) {
    if (basis.total(j) > x.n_max - 1) continue;
    worst = std::max(worst, (x.matrix.col(j) - expected.col(j)).cwiseAbs().maxCoeff());
  }
  return worst;
}

TransferMatrix evolve_transfer(const FilterSystem& system, const DriveSignal& drive,
                               double t_i, double t_f, double step) {
  drive.validate();
  check_step(drive, step);
  if (t_f < t_i) throw InvalidArgument("evolution requires t_i <= t_f");
  const double w0 = system.omega0();
  const double w1 = system.omega1();
  const auto generator = [&](double t) {
    TransferMatrix h;
    h << w0, -drive(t), -w1, w1;
    return h;
  };
  return magnus4<TransferMatrix>(generator, t_i, t_f, step, TransferMatrix::Identity());
}

Complex response_function(const FilterSystem& system, double tau) {
  const Complex residue =
      time_domain_propagator(system.ladder(), Contour::kRetarded, 0, 1, tau);
  if (tau <= 0.0) return residue;
  // A delta source in the first equation starts the free evolution from
  // (A_(0), A_(1)) = (i, 0).
  TransferMatrix generator;
  generator << system.omega0(), 0.0, -system.omega1(), system.omega1();
  const TransferMatrix exponent = Complex(0.0, -tau) * generator;
  const TransferMatrix u = exponent.exp();
  const Complex direct = u(1, 0) * kI;
  if (std::abs(direct - residue) > 1e-8) {
    std::ostringstream os;
    os << "residue " << residue << " vs delta-source " << direct << " at tau " << tau;
    throw OracleMismatch(os.str());
  }
  return residue;
}

Complex kubo_commutator(const FilterSystem& system, int n_max, double tau) {
  const FockOperators f = build_fock_operators(n_max);
  const double s = system.sigma();
  const Complex p0 = std::exp(Complex(0.0, -system.omega0() * tau));
  const Complex p1 = std::exp(Complex(0.0, -system.omega1() * tau));
  const Matrix out_mode = s * (f.a0.matrix * p0 + f.a1.matrix * p1);
  const Matrix in_mode = s * (f.a0_dag.matrix - f.a1_dag.matrix);
  const Matrix comm = out_mode * in_mode - in_mode * out_mode;
  const Complex c = comm(0, 0);
  const Matrix expected = c * Matrix::Identity(comm.rows(), comm.cols());
  const double dev = protected_residual({n_max, comm}, expected);
  if (dev > 1e-12 * std::max(1.0, std::abs(c))) {
    std::ostringstream os;
    os << "commutator deviates from a c-number by " << dev;
    throw NonScalarCommutator(os.str());
  }
  return c;
}

std::vector<Complex> born_series(const FilterSystem& system, const DriveSignal& drive,
                                 int order, double step) {
  if (order < 0 || order > 6) throw InvalidArgument("order must lie in 0..6");
  drive.validate();
  check_step(drive, step);
  const double t_i = drive.t_min;
  const double t_f = drive.t_max;
  const auto n = static_cast<long>(std::ceil((t_f - t_i) / step - 1e-9));
  const double h = (t_f - t_i) / static_cast<double>(n);
  const MassLadder ladder = system.ladder();

  std::vector<Complex> kernel(n + 1);
  std::vector<double> v(n + 1);
  std::vector<Complex> outer(n + 1);
  for (long m = 0; m <= n; ++m) {
    const double t = t_i + static_cast<double>(m) * h;
    kernel[m] = time_domain_propagator(ladder, Contour::kFeynman, 0, 1,
                                       static_cast<double>(m) * h);
    v[m] = drive(t);
    outer[m] = std::exp(Complex(0.0, -system.omega0() * (t_f - t)));
  }
  // Euler-Maclaurin correction at the coincident-time end of each inner
  // integral, where the kernel vanishes with slope K'(0+).
  const Complex slope = derivative_jump(ladder, 0, 1, 1);
  const Complex end_correction = h * h / 12.0 * slope;

  auto trapezoid_outer = [&](const std::vector<Complex>& phi) {
    Complex sum = 0.5 * (outer[0] * phi[0] + outer[n] * phi[n]);
    for (long m = 1; m < n; ++m) sum += outer[m] * phi[m];
    return sum * h;
  };

  std::vector<Complex> terms{std::exp(Complex(0.0, -system.omega0() * (t_f - t_i)))};
  std::vector<Complex> phi(n + 1);
  for (long m = 0; m <= n; ++m) phi[m] = v[m] * kernel[m];
  for (int k = 1; k <= order; ++k) {
    if (k > 1) {
      std::vector<Complex> next(n + 1, Complex(0.0, 0.0));
      for (long m = 1; m <= n; ++m) {
        Complex sum = 0.5 * kernel[m] * phi[0];
        for (long j = 1; j < m; ++j) sum += kernel[m - j] * phi[j];
        next[m] = v[m] * (h * sum + end_correction * phi[m]);
      }
      phi = std::move(next);
    }
    const Complex term = trapezoid_outer(phi);
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
      throw QuadratureFailure("Born series term is not finite");
    }
    terms.push_back(term);
  }
  return terms;
}

Complex vacuum_tadpole(const FilterSystem& system, const DriveSignal& drive) {
  // Delta_F^(0,1) is continuous at 0; use the right limit i * sum c_l.
  return -kI * drive.area() * jump_at_zero(system.ladder(), 0, 1);
}

Complex vacuum_tadpole_unregularised(const FilterSystem& system,
                                     const DriveSignal& drive) {
  return -kI * drive.area() * jump_at_zero(system.ladder(), 0, 0);
}

SignOperator sector_sign_operator(int n_total) {
  if (n_total < 0) throw InvalidArgument("sector must have n_total >= 0");
  SignOperator sign{Eigen::VectorXd(n_total + 1)};
  for (int k = 0; k <= n_total; ++k) sign.diagonal(k) = (n_total - k) % 2 == 0 ? 1.0 : -1.0;
  return sign;
}

SectorMatrix sector_s_matrix(const FilterSystem& system, const DriveSignal& drive,
                             int n_total, double step) {
  if (n_total < 0) throw InvalidArgument("sector must have n_total >= 0");
  drive.validate();
  check_step(drive, step);
  const FockOperators f = ladder_matrices(n_total);
  const std::vector<int> idx = sector_indices(FockBasis(n_total), n_total);
  const Matrix n00 = sector_block(f.a0_dag.matrix * f.a0.matrix, idx);
  const Matrix n01 = sector_block(f.a0_dag.matrix * f.a1.matrix, idx);
  const Matrix n10 = sector_block(f.a1_dag.matrix * f.a0.matrix, idx);
  const Matrix n11 = sector_block(f.a1_dag.matrix * f.a1.matrix, idx);
  const double s2 = system.sigma() * system.sigma();
  const double dw = system.omega1() - system.omega0();
  const auto hamiltonian = [&](double t) {
    const Complex beat = std::exp(Complex(0.0, dw * t));
    const Matrix bilinear = n00 + n01 * std::conj(beat) - n10 * beat - n11;
    return Matrix(-drive(t) * s2 * bilinear);
  };
  const auto dim = static_cast<Eigen::Index>(idx.size());
  return {n_total, magnus4<Matrix>(hamiltonian, drive.t_min, drive.t_max, step,
                                   Matrix::Identity(dim, dim))};
}

double pseudo_unitarity_defect(const SectorMatrix& s) {
  const Matrix sign = sector_sign_operator(s.n_total).dense();
  const Matrix product = sign * s.matrix.adjoint() * sign * s.matrix;
  return (product - Matrix::Identity(product.rows(), product.cols())).norm();
}

double unitarity_defect(const SectorMatrix& s) {
  const Matrix product = s.matrix.adjoint() * s.matrix;
  return (product - Matrix::Identity(product.rows(), product.cols())).norm();
}

Complex dual_amplitude_from_s(const FilterSystem& system, const DriveSignal& drive,
                              const SectorMatrix& s) {
  if (s.n_total != 1) throw InvalidArgument("dual amplitude needs the one-quantum sector");
  // Sector basis: index 0 = |0,1>, index 1 = |1,0>.
  const double w0 = system.omega0();
  const double w1 = system.omega1();
  return std::exp(Complex(0.0, -w0 * drive.t_max)) *
         (s.matrix(1, 1) * std::exp(Complex(0.0, w0 * drive.t_min)) -
          s.matrix(1, 0) * std::exp(Complex(0.0, w1 * drive.t_min)));
}

}  // namespace pvfilter
