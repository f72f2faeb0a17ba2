#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "pvfilter/dirac.hpp"
#include "pvfilter/errors.hpp"

using namespace pvfilter;

namespace {

// Counterclockwise trapezoid loop of G_f^(lo,hi)(pslash) e^{-i p0 tau} in p0
// around center with the given radius.
SpinorMatrix loop_integral(const MassLadder& l, std::size_t lo, std::size_t hi,
                           const std::array<double, 3>& pv, double tau, Complex center,
                           double radius, const GammaSet& g) {
  const int n = 2048;
  SpinorMatrix sum = SpinorMatrix::Zero();
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, 2.0 * M_PI * j / n);
    const Complex p0 = center + radius * e;
    const Complex dp0 = Complex(0.0, 1.0) * radius * e * (2.0 * M_PI / n);
    sum += std::exp(Complex(0.0, -tau) * p0) * dp0 * g_f_matrix(l, lo, hi, FourMomentum{p0, pv}, g);
  }
  return sum;
}

}  // namespace

TEST_CASE("gamma matrices") {
  const GammaSet g = GammaSet::dirac();
  CHECK(clifford_residual(g) == 0.0);
  CHECK((g[0] * g[0] - SpinorMatrix::Identity()).norm() == 0.0);
}

TEST_CASE("g_f of pslash through its eigenvalues") {
  // pslash has eigenvalues +/- sqrt(p^2), each twice; G_f(pslash) must
  // carry G_f(+/- sqrt(p^2)) on the same eigenvectors.
  const GammaSet g = GammaSet::dirac();
  const MassLadder l({1.0, 2.0, 4.0});
  const FourMomentum p{Complex(1.7, 0.2), {0.3, -0.5, 0.9}};
  const SpinorMatrix ps = slash(g, p);
  Eigen::ComplexEigenSolver<SpinorMatrix> es(ps);
  const SpinorMatrix v = es.eigenvectors();
  SpinorMatrix diag = SpinorMatrix::Zero();
  for (int i = 0; i < 4; ++i) diag(i, i) = g_f_scalar(l, 0, 2, es.eigenvalues()(i));
  const SpinorMatrix expected = v * diag * v.inverse();
  const SpinorMatrix got = g_f_matrix(l, 0, 2, p, g);
  CHECK((got - expected).norm() / got.norm() <= 1e-11);
  CHECK((slash(g, p) * slash(g, p) - p.square() * SpinorMatrix::Identity()).norm() <= 1e-13);
}

TEST_CASE("filter polynomial inverts G_f") {
  const GammaSet g = GammaSet::dirac();
  const MassLadder l({1.0, 10.0});
  const FourMomentum p{Complex(0.4, 0.0), {0.1, 0.2, 0.3}};
  CHECK((inverse_filter_polynomial(l, p, g) * g_f_matrix(l, 0, 1, p, g) -
         SpinorMatrix::Identity()).norm() <= 1e-12);
  const FourMomentum shell{Complex(std::sqrt(1.0 + 0.14), 0.0), {0.1, 0.2, 0.3}};
  CHECK_THROWS_AS(g_f_matrix(l, 0, 1, shell, g), PoleProximity);
}

TEST_CASE("equal-time anticommutator") {
  const GammaSet g = GammaSet::dirac();
  const MassLadder l({1.0, 2.0, 4.0});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const std::array<double, 3> pv{u(rng), u(rng), u(rng)};
    for (std::size_t K = 0; K < 3; ++K) {
      for (std::size_t L = 0; L < 3; ++L) {
        const SpinorMatrix expected = K == L ? g[0] : SpinorMatrix::Zero();
        CHECK((equal_time_anticommutator(l, K, L, pv, g) - expected).norm() <= 1e-10);
      }
    }
  }
}

TEST_CASE("contractions") {
  const GammaSet g = GammaSet::dirac();
  const std::array<double, 3> pv{0.2, 0.1, -0.4};
  const MassLadder l({1.0, 10.0});
  const SpinorMatrix right = contraction_time_domain(l, Contour::kFeynman, pv, 1e-12, g);
  const SpinorMatrix left = contraction_time_domain(l, Contour::kFeynman, pv, -1e-12, g);
  CHECK((right - left).norm() <= 1e-10);
  const SpinorMatrix sum = contraction_time_domain(l, Contour::kPlus, pv, 0.4, g) +
                           contraction_time_domain(l, Contour::kMinus, pv, 0.4, g);
  CHECK((sum - contraction_time_domain(l, Contour::kClosed, pv, 0.4, g)).norm() <= 1e-12);
  // Bare line: the jump at zero is i times the equal-time anticommutator.
  const MassLadder bare({1.0});
  const SpinorMatrix jump = contraction_time_domain(bare, Contour::kFeynman, pv, 1e-300, g) -
                            contraction_time_domain(bare, Contour::kFeynman, pv, -1e-300, g);
  CHECK((jump - Complex(0.0, 1.0) * g[0]).norm() <= 1e-12);
  CHECK_THROWS_AS(contraction_time_domain(bare, Contour::kFeynman, pv, 0.0, g), TauZeroUndefined);
  CHECK_THROWS_AS(contraction_time_domain(l, Contour::kRetarded, pv, 1.0, g), InvalidArgument);
}

TEST_CASE("mode sum and recursion") {
  const GammaSet g = GammaSet::dirac();
  const MassLadder l({1.0, 3.0, 7.0, 15.0});
  const FourMomentum p{Complex(2.2, 0.1), {0.5, 0.0, -0.3}};
  const SpinorMatrix gm = g_f_matrix(l, 0, 3, p, g);
  CHECK((mode_sum_filter(l, p, g) - gm).norm() / gm.norm() <= 1e-12);
  for (std::size_t L = 1; L < 4; ++L) {
    for (std::size_t K = 0; K < L; ++K) CHECK(matrix_recursion_residual(l, K, L, p, g) <= 1e-12);
  }
}

TEST_CASE("residues against small-circle quadrature") {
  const GammaSet g = GammaSet::dirac();
  const MassLadder l({1.0, 2.0, 4.0});
  const std::array<double, 3> pv{0.3, -0.2, 0.4};
  const Complex two_pi_i(0.0, 2.0 * M_PI);
  // Around every pole: the equal-time anticommutator is minus the residue sum.
  for (std::size_t K = 0; K < 3; ++K) {
    for (std::size_t L = 0; L <= K; ++L) {
      const SpinorMatrix loop = loop_integral(l, L, K, pv, 0.0, 0.0, 6.0, g) / two_pi_i;
      CHECK((equal_time_anticommutator(l, K, L, pv, g) + loop).norm() <= 1e-10);
    }
  }
  // Small circles around the positive energies only give PLUS.
  const double p2 = 0.09 + 0.04 + 0.16;
  SpinorMatrix plus = SpinorMatrix::Zero();
  for (double m : {1.0, 2.0, 4.0}) {
    plus += loop_integral(l, 0, 2, pv, 0.7, std::sqrt(m * m + p2), 0.2, g) / two_pi_i;
  }
  CHECK((contraction_time_domain(l, Contour::kPlus, pv, 0.7, g) + plus).norm() <= 1e-10);
}
