#include "pvfilter/dirac.hpp"

#include <cmath>
#include <sstream>

#include "pvfilter/errors.hpp"

namespace pvfilter {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kMatrixPoleGuard = 1e-10;

double metric(int mu, int nu) {
  if (mu != nu) return 0.0;
  return mu == 0 ? 1.0 : -1.0;
}

void check_indices(const MassLadder& ladder, std::size_t K, std::size_t L) {
  if (K >= ladder.size() || L >= ladder.size()) {
    throw IndexOutOfRange("index exceeds ladder size");
  }
}

struct PoleResidues {
  SpinorMatrix positive = SpinorMatrix::Zero();
  SpinorMatrix negative = SpinorMatrix::Zero();
};

// Residues of e^{-i p0 tau} G_f^(lo,hi)(pslash) at p0 = +E_j and -E_j, from
// G = C prod (M_l + pslash) / prod (E_l - p0)(E_l + p0).
PoleResidues energy_residues(const MassLadder& ladder, std::size_t lo, std::size_t hi,
                             const std::array<double, 3>& pvec, double tau,
                             const GammaSet& gammas) {
  const double p2 = pvec[0] * pvec[0] + pvec[1] * pvec[1] + pvec[2] * pvec[2];
  std::vector<double> energy2;
  double prefactor = 1.0 / ladder[lo];
  for (std::size_t l = lo; l <= hi; ++l) {
    energy2.push_back(ladder[l] * ladder[l] + p2);
    prefactor *= ladder[l];
  }
  const auto numerator = [&](double p0) {
    const SpinorMatrix ps = slash(gammas, FourMomentum{Complex(p0, 0.0), pvec});
    SpinorMatrix n = SpinorMatrix::Identity();
    for (std::size_t l = lo; l <= hi; ++l) {
      n = n * (ladder[l] * SpinorMatrix::Identity() + ps);
    }
    return n;
  };

  PoleResidues res;
  for (std::size_t j = 0; j < energy2.size(); ++j) {
    const double e = std::sqrt(energy2[j]);
    double others = 1.0;
    for (std::size_t l = 0; l < energy2.size(); ++l) {
      if (l == j) continue;
      const double gap = energy2[l] - energy2[j];
      if (std::abs(gap) <= kMinRelativeSeparation * std::max(energy2[l], energy2[j])) {
        throw DegenerateLadder("coincident pole energies");
      }
      others *= gap;
    }
    const Complex up = std::exp(Complex(0.0, -e * tau));
    const Complex down = std::exp(Complex(0.0, e * tau));
    res.positive += (prefactor * up / (-2.0 * e * others)) * numerator(e);
    res.negative += (prefactor * down / (2.0 * e * others)) * numerator(-e);
  }
  return res;
}

}  // namespace

GammaSet GammaSet::dirac() {
  using M2 = Eigen::Matrix2cd;
  M2 s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -kI, kI, 0;
  s3 << 1, 0, 0, -1;
  GammaSet g;
  g.gamma[0] = SpinorMatrix::Zero();
  g.gamma[0].topLeftCorner<2, 2>() = M2::Identity();
  g.gamma[0].bottomRightCorner<2, 2>() = -M2::Identity();
  const std::array<M2, 3> sigmas{s1, s2, s3};
  for (int i = 0; i < 3; ++i) {
    SpinorMatrix m = SpinorMatrix::Zero();
    m.topRightCorner<2, 2>() = sigmas[i];
    m.bottomLeftCorner<2, 2>() = -sigmas[i];
    g.gamma[i + 1] = m;
  }
  return g;
}

double clifford_residual(const GammaSet& gammas) {
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const SpinorMatrix anti = gammas[mu] * gammas[nu] + gammas[nu] * gammas[mu] -
                                2.0 * metric(mu, nu) * SpinorMatrix::Identity();
      worst = std::max(worst, anti.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

Complex FourMomentum::square() const {
  return p0 * p0 - (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

SpinorMatrix slash(const GammaSet& gammas, const FourMomentum& p) {
  return gammas[0] * p.p0 - gammas[1] * p.p[0] - gammas[2] * p.p[1] -
         gammas[3] * p.p[2];
}

SpinorMatrix g_f_matrix(const MassLadder& ladder, std::size_t K, std::size_t L,
                        const FourMomentum& p, const GammaSet& gammas) {
  check_indices(ladder, K, L);
  if (K > L) return SpinorMatrix::Zero();
  const SpinorMatrix ps = slash(gammas, p);
  const Complex p2 = p.square();
  SpinorMatrix g = SpinorMatrix::Identity() / ladder[K];
  for (std::size_t l = K; l <= L; ++l) {
    const double m = ladder[l];
    const Complex denom = m * m - p2;
    if (std::abs(denom) <= kMatrixPoleGuard * m * m) {
      std::ostringstream os;
      os << "p^2 = " << p2 << " is on the mass shell of M_" << l << " = " << m;
      throw PoleProximity(os.str());
    }
    g = g * ((m / denom) * (m * SpinorMatrix::Identity() + ps));
  }
  return g;
}

double matrix_recursion_residual(const MassLadder& ladder, std::size_t K,
                                 std::size_t L, const FourMomentum& p,
                                 const GammaSet& gammas) {
  check_indices(ladder, K, L);
  if (K >= L) throw IndexOrder("recursion requires K < L");
  const SpinorMatrix ps = slash(gammas, p);
  const SpinorMatrix id = SpinorMatrix::Identity();
  const SpinorMatrix g = g_f_matrix(ladder, K, L, p, gammas);
  const SpinorMatrix r1 =
      (ladder[L] * id - ps) / ladder[L] * g - g_f_matrix(ladder, K, L - 1, p, gammas);
  const SpinorMatrix r2 =
      (ladder[K] * id - ps) / ladder[K + 1] * g - g_f_matrix(ladder, K + 1, L, p, gammas);
  return std::max(r1.norm(), r2.norm()) / g.norm();
}

SpinorMatrix inverse_filter_polynomial(const MassLadder& ladder, const FourMomentum& p,
                                       const GammaSet& gammas) {
  const SpinorMatrix ps = slash(gammas, p);
  const SpinorMatrix id = SpinorMatrix::Identity();
  SpinorMatrix out = ladder[0] * id - ps;
  for (std::size_t l = 1; l < ladder.size(); ++l) out = out * (id - ps / ladder[l]);
  return out;
}

SpinorMatrix equal_time_anticommutator(const MassLadder& ladder, std::size_t K,
                                       std::size_t L,
                                       const std::array<double, 3>& pvec,
                                       const GammaSet& gammas) {
  check_indices(ladder, K, L);
  // The integrand is G_f^(L,K), which vanishes for L > K.
  if (L > K) return SpinorMatrix::Zero();
  const PoleResidues r = energy_residues(ladder, L, K, pvec, 0.0, gammas);
  return -(r.positive + r.negative);
}

SpinorMatrix contraction_time_domain(const MassLadder& ladder, Contour contour,
                                     const std::array<double, 3>& pvec, double tau,
                                     const GammaSet& gammas) {
  const std::size_t N = ladder.regulators();
  if (contour == Contour::kRetarded) {
    throw InvalidArgument("contraction is defined for FEYNMAN, PLUS, MINUS, CLOSED");
  }
  if (contour == Contour::kFeynman && N == 0 && tau == 0.0) {
    throw TauZeroUndefined("unregularised contraction jumps at tau = 0");
  }
  const PoleResidues r = energy_residues(ladder, 0, N, pvec, tau, gammas);
  switch (contour) {
    case Contour::kFeynman:
      // Continuous at tau = 0 for N >= 1; report the right limit there.
      return tau >= 0.0 ? SpinorMatrix(-kI * r.positive) : SpinorMatrix(kI * r.negative);
    case Contour::kPlus:
      return -r.positive;
    case Contour::kMinus:
      return -r.negative;
    case Contour::kClosed:
      return -(r.positive + r.negative);
    case Contour::kRetarded:
      break;
  }
  return SpinorMatrix::Zero();
}

SpinorMatrix mode_sum_filter(const MassLadder& ladder, const FourMomentum& p,
                             const GammaSet& gammas) {
  const PartialFractionDecomposition pfd = decompose(ladder);
  SpinorMatrix sum = SpinorMatrix::Zero();
  for (std::size_t l = 0; l < ladder.size(); ++l) {
    const double out_weight = pfd.weights[l];
    const double in_weight = pfd.signs[l] * pfd.weights[l];
    sum += out_weight * in_weight * g_f_matrix(ladder, l, l, p, gammas);
  }
  return sum;
}

}  // namespace pvfilter
