#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "pvfilter/errors.hpp"
#include "pvfilter/reg_algebra.hpp"

using namespace pvfilter;

namespace {

// Residues recovered by collocation: solve sum_K c_K / (M_K - z_i) = G(z_i)
// at N+1 points on a circle around the ladder.
std::vector<double> collocation_residues(const MassLadder& ladder) {
  const std::size_t n = ladder.size();
  Eigen::MatrixXcd a(n, n);
  Eigen::VectorXcd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex z = std::polar(2.0 * ladder.max_mass(), 0.3 + 2.0 * M_PI * i / n);
    for (std::size_t k = 0; k < n; ++k) a(i, k) = 1.0 / (ladder[k] - z);
    b(i) = g_f_scalar(ladder, 0, n - 1, z);
  }
  const Eigen::VectorXcd c = a.colPivHouseholderQr().solve(b);
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(c(k).real());
  return out;
}

}  // namespace

TEST_CASE("closed-form residues for small ladders") {
  const PartialFractionDecomposition p = decompose(MassLadder({1.0, 2.0, 4.0}));
  CHECK(p.coefficients[0] == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(p.coefficients[1] == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK(p.coefficients[2] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(p.signs == std::vector<int>{1, -1, 1});

  const PartialFractionDecomposition q = decompose(MassLadder({1.0, 10.0}));
  CHECK(std::abs(q.coefficients[0] - 10.0 / 9.0) <= 1e-14);
  CHECK(std::abs(q.coefficients[1] + 10.0 / 9.0) <= 1e-14);
  CHECK(q.weights[0] == doctest::Approx(1.0540925533894598).epsilon(1e-15));
  CHECK(q.weights[1] == doctest::Approx(1.0540925533894598).epsilon(1e-15));

  const PartialFractionDecomposition single = decompose(MassLadder({3.0}));
  CHECK(single.coefficients == std::vector<double>{1.0});
}

TEST_CASE("residues agree with collocation") {
  for (const MassLadder& l : {MassLadder({1.0, 10.0}), MassLadder({0.7, 2.0, 5.5}),
                              MassLadder({1.0, 3.0, 9.0, 27.0})}) {
    const PartialFractionDecomposition p = decompose(l);
    const std::vector<double> c = collocation_residues(l);
    for (std::size_t k = 0; k < l.size(); ++k) {
      CHECK(p.coefficients[k] == doctest::Approx(c[k]).epsilon(1e-9));
    }
  }
}

TEST_CASE("sum rules and moments") {
  const MassLadder l({1.0, 2.0, 4.0});
  const PartialFractionDecomposition p = decompose(l);
  CHECK(std::abs(moment(p, l, 0)) <= 1e-12);
  CHECK(std::abs(moment(p, l, 1)) <= 1e-12);
  CHECK(std::abs(moment(p, l, -1) - 1.0) <= 1e-12);
  for (double r : sum_rule_residuals(p, l)) CHECK(r <= 1e-12);
  CHECK(sum_rule_residuals(decompose(MassLadder({2.0})), MassLadder({2.0})).empty());
}

TEST_CASE("g_f evaluation") {
  const MassLadder l({1.0, 10.0});
  CHECK(g_f_scalar(l, 0, 1, 0.5).real() == doctest::Approx(2.1052631578947367).epsilon(1e-15));
  CHECK(g_f_scalar(l, 1, 0, 0.5) == Complex(0.0, 0.0));
  CHECK(g_f_scalar(l, 0, 0, 0.0).real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(g_f_scalar(l, 0, 1, 1.0), PoleProximity);
  CHECK_THROWS_AS(g_f_scalar(l, 0, 2, 0.5), IndexOutOfRange);
}

TEST_CASE("reconstruction and recursions at random points") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (const MassLadder& l : {MassLadder({1.0, 10.0}), MassLadder({1.0, 2.0, 4.0}),
                              MassLadder({1.0, 2.0, 4.0, 8.0, 16.0})}) {
    const PartialFractionDecomposition p = decompose(l);
    for (int i = 0; i < 100; ++i) {
      const Complex z(u(rng), u(rng));
      const Complex g = g_f_scalar(l, 0, l.regulators(), z);
      CHECK(std::abs(reconstruct(p, l, z) - g) / std::abs(g) <= 1e-10);
      for (std::size_t L = 1; L < l.size(); ++L) {
        for (std::size_t K = 0; K < L; ++K) CHECK(recursion_residual(l, K, L, z) <= 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(recursion_residual(MassLadder({1.0, 2.0}), 1, 1, 0.3), IndexOrder);
}

TEST_CASE("ladder validation") {
  CHECK_THROWS_AS(MassLadder({}), InvalidLadder);
  CHECK_THROWS_AS(MassLadder({1.0, -2.0}), InvalidLadder);
  CHECK_THROWS_AS(MassLadder({1.0, NAN}), InvalidLadder);
  CHECK_THROWS_AS(MassLadder({1.0, 1.0}), DegenerateLadder);
  CHECK_THROWS_WITH_AS(MassLadder({1.0, 1.0}), doctest::Contains("DegenerateLadder"),
                       DegenerateLadder);
}
