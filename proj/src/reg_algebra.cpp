#include "pvfilter/reg_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pvfilter/errors.hpp"

namespace pvfilter {

namespace {

// 113-bit significand. The pole expansion cancels by up to ~1e10 for six
// regulators at |z| beyond the ladder.
using Quad = boost::multiprecision::cpp_bin_float_quad;

}  // namespace

MassLadder::MassLadder(std::vector<double> masses) : masses_(std::move(masses)) {
  if (masses_.empty()) throw InvalidLadder("at least one mass is required");
  for (double m : masses_) {
    if (!std::isfinite(m) || m <= 0.0) {
      std::ostringstream os;
      os << "mass " << m << " is not finite and positive";
      throw InvalidLadder(os.str());
    }
  }
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    for (std::size_t j = i + 1; j < masses_.size(); ++j) {
      const double sep = std::abs(masses_[i] - masses_[j]) /
                         std::max(masses_[i], masses_[j]);
      if (sep <= kMinRelativeSeparation) {
        std::ostringstream os;
        os << "masses M_" << i << " = " << masses_[i] << " and M_" << j
           << " = " << masses_[j] << " are not separated";
        throw DegenerateLadder(os.str());
      }
    }
  }
}

double MassLadder::max_mass() const {
  return *std::max_element(masses_.begin(), masses_.end());
}

double MassLadder::min_mass() const {
  return *std::min_element(masses_.begin(), masses_.end());
}

MassLadder MassLadder::sub_ladder(std::size_t K, std::size_t L) const {
  if (K > L || L >= masses_.size()) {
    throw IndexOutOfRange("sub-ladder range out of bounds");
  }
  return MassLadder(std::vector<double>(masses_.begin() + K,
                                        masses_.begin() + L + 1));
}

namespace {

void check_index(const MassLadder& ladder, std::size_t i) {
  if (i >= ladder.size()) {
    std::ostringstream os;
    os << "index " << i << " exceeds N = " << ladder.regulators();
    throw IndexOutOfRange(os.str());
  }
}

}  // namespace

Complex g_f_scalar(const MassLadder& ladder, std::size_t K, std::size_t L,
                   Complex z) {
  check_index(ladder, K);
  check_index(ladder, L);
  if (K > L) return Complex(0.0, 0.0);
  Complex denom(1.0, 0.0);
  for (std::size_t l = K; l <= L; ++l) {
    const double m = ladder[l];
    if (std::abs(z - m) <= kPoleGuard * m) {
      std::ostringstream os;
      os << "z = " << z << " is within the guard distance of M_" << l
         << " = " << m;
      throw PoleProximity(os.str());
    }
    denom *= 1.0 - z / m;
  }
  return 1.0 / (ladder[K] * denom);
}

PartialFractionDecomposition decompose(const MassLadder& ladder) {
  const std::size_t n = ladder.size();
  Quad numerator = 1;
  for (std::size_t l = 1; l < n; ++l) numerator *= ladder[l];

  PartialFractionDecomposition pfd;
  pfd.coefficients.reserve(n);
  pfd.signs.reserve(n);
  pfd.weights.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Quad denom = 1;
    for (std::size_t l = 0; l < n; ++l) {
      if (l != k) denom *= Quad(ladder[l]) - ladder[k];
    }
    if (denom == 0) throw DegenerateLadder("residue denominator vanishes");
    const Quad exact = numerator / denom;
    const double c = static_cast<double>(exact);
    if (!std::isfinite(c)) {
      throw DegenerateLadder("residue denominator vanishes");
    }
    pfd.coefficients.push_back(c);
    pfd.corrections.push_back(static_cast<double>(exact - c));
    pfd.signs.push_back(c < 0.0 ? -1 : 1);
    pfd.weights.push_back(std::sqrt(std::abs(c)));
  }
  return pfd;
}

double recursion_residual(const MassLadder& ladder, std::size_t K,
                          std::size_t L, Complex z) {
  check_index(ladder, K);
  check_index(ladder, L);
  if (K >= L) throw IndexOrder("recursion requires K < L");
  const Complex g = g_f_scalar(ladder, K, L, z);
  const Complex lower_l = g_f_scalar(ladder, K, L - 1, z);
  const Complex upper_k = g_f_scalar(ladder, K + 1, L, z);
  const double r1 = std::abs((ladder[L] - z) / ladder[L] * g - lower_l);
  const double r2 = std::abs((ladder[K] - z) / ladder[K + 1] * g - upper_k);
  return std::max(r1, r2) / std::abs(g);
}

double moment(const PartialFractionDecomposition& pfd,
              const MassLadder& ladder, int j) {
  double sum = 0.0;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    sum += pfd.coefficients[k] * std::pow(ladder[k], j);
  }
  return sum;
}

std::vector<double> sum_rule_residuals(const PartialFractionDecomposition& pfd,
                                       const MassLadder& ladder) {
  if (pfd.coefficients.size() != ladder.size()) {
    throw DimensionMismatch("decomposition does not match ladder");
  }
  std::vector<double> out;
  for (std::size_t j = 0; j < ladder.regulators(); ++j) {
    double scale = 0.0;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      scale += std::abs(pfd.coefficients[k]) *
               std::pow(ladder[k], static_cast<double>(j));
    }
    out.push_back(std::abs(moment(pfd, ladder, static_cast<int>(j))) / scale);
  }
  return out;
}

Complex reconstruct(const PartialFractionDecomposition& pfd,
                    const MassLadder& ladder, Complex z) {
  const bool corrected = pfd.corrections.size() == pfd.coefficients.size();
  Quad re = 0;
  Quad im = 0;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    Quad c = pfd.coefficients[k];
    if (corrected) c += pfd.corrections[k];
    // c / (d - i y) = c (d + i y) / (d^2 + y^2)
    const Quad d = Quad(ladder[k]) - z.real();
    const Quad y = z.imag();
    const Quad scale = c / (d * d + y * y);
    re += scale * d;
    im += scale * y;
  }
  return Complex(static_cast<double>(re), static_cast<double>(im));
}

}  // namespace pvfilter
