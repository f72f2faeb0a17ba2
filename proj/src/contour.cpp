#include "pvfilter/contour.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "pvfilter/errors.hpp"
#include "pvfilter/quadrature.hpp"

namespace pvfilter {

namespace {

constexpr Complex kI(0.0, 1.0);

void check_indices(const MassLadder& ladder, std::size_t K, std::size_t L) {
  if (K >= ladder.size() || L >= ladder.size()) {
    throw IndexOutOfRange("propagator index exceeds ladder size");
  }
}

// Which poles a contour picks up. Masses are positive, so every pole sits
// on the positive energy axis.
bool picks_pole(Contour contour, double pole) {
  switch (contour) {
    case Contour::kPlus:
      return pole > 0.0;
    case Contour::kMinus:
      return pole < 0.0;
    default:
      return true;
  }
}

// sum over picked poles of c_l e^{-i M_l tau}, ascending pole index.
Complex pole_sum(const MassLadder& sub, const PartialFractionDecomposition& pfd,
                 Contour contour, double tau) {
  Complex sum(0.0, 0.0);
  for (std::size_t l = 0; l < sub.size(); ++l) {
    if (!picks_pole(contour, sub[l])) continue;
    sum += pfd.coefficients[l] * std::exp(-kI * (sub[l] * tau));
  }
  return sum;
}

// Real-axis integral of e^{-i w tau} G(w) / (2 pi) with poles at M_l - i eps.
Complex line_integral(const MassLadder& sub, double tau, double epsilon,
                      double cutoff) {
  double numerator = 1.0;
  for (std::size_t l = 1; l < sub.size(); ++l) numerator *= sub[l];
  const auto integrand = [&](double w) {
    Complex denom(1.0, 0.0);
    for (std::size_t l = 0; l < sub.size(); ++l) {
      denom *= Complex(sub[l] - w, -epsilon);
    }
    return std::exp(Complex(0.0, -w * tau)) * (numerator / denom);
  };

  // Panels no wider than half an oscillation period, with the pole
  // locations as extra breakpoints.
  const double width =
      tau == 0.0 ? cutoff / 256.0
                 : std::min(std::numbers::pi / std::abs(tau), cutoff / 256.0);
  std::vector<double> points;
  const auto panels = static_cast<std::size_t>(std::ceil(2.0 * cutoff / width));
  points.reserve(panels + sub.size() + 1);
  for (std::size_t i = 0; i <= panels; ++i) {
    points.push_back(-cutoff + 2.0 * cutoff * static_cast<double>(i) /
                                   static_cast<double>(panels));
  }
  for (double m : sub.masses()) {
    if (m < cutoff) points.push_back(m);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  quad::Options opt;
  opt.abs_tol = 1e-9;
  return quad::integrate_panels<Complex>(integrand, points, opt) /
         (2.0 * std::numbers::pi);
}

// Clockwise circle enclosing the picked poles, measure dw / (2 pi i),
// periodic trapezoid rule refined until converged.
Complex circle_integral(const MassLadder& sub, Contour contour, double tau) {
  std::vector<double> picked;
  for (double m : sub.masses()) {
    if (picks_pole(contour, m)) picked.push_back(m);
  }
  if (picked.empty()) return Complex(0.0, 0.0);
  const auto [lo, hi] = std::minmax_element(picked.begin(), picked.end());
  const double center = 0.5 * (*lo + *hi);
  const double radius = 0.5 * (*hi - *lo) + 0.5 * std::abs(*lo);

  double numerator = 1.0;
  for (std::size_t l = 1; l < sub.size(); ++l) numerator *= sub[l];
  const auto f = [&](double theta) {
    const Complex dir = std::polar(1.0, theta);
    const Complex w = center + radius * dir;
    Complex denom(1.0, 0.0);
    for (double m : sub.masses()) denom *= m - w;
    return std::exp(-kI * w * tau) * (numerator / denom) * radius * dir;
  };

  std::size_t n = 64;
  auto trapezoid = [&](std::size_t count) {
    Complex sum(0.0, 0.0);
    double scale = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const Complex v =
          f(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count));
      sum += v;
      scale += std::abs(v);
    }
    return std::pair{-sum / static_cast<double>(count),
                     scale / static_cast<double>(count)};
  };
  auto [prev, scale] = trapezoid(n);
  while (n < (std::size_t{1} << 22)) {
    n *= 2;
    const auto [next, next_scale] = trapezoid(n);
    if (std::abs(next - prev) <= 1e-13 * (1.0 + next_scale)) return next;
    prev = next;
    scale = next_scale;
  }
  throw QuadratureFailure("circle quadrature did not converge");
}

}  // namespace

std::string_view contour_name(Contour contour) {
  switch (contour) {
    case Contour::kFeynman:
      return "FEYNMAN";
    case Contour::kRetarded:
      return "RETARDED";
    case Contour::kClosed:
      return "CLOSED";
    case Contour::kPlus:
      return "PLUS";
    case Contour::kMinus:
      return "MINUS";
  }
  return "UNKNOWN";
}

Contour parse_contour(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Contour c : {Contour::kFeynman, Contour::kRetarded, Contour::kClosed,
                    Contour::kPlus, Contour::kMinus}) {
    if (contour_name(c) == upper) return c;
  }
  throw InvalidArgument("unknown contour '" + std::string(name) + "'");
}

Complex time_domain_propagator(const MassLadder& ladder, Contour contour,
                               std::size_t K, std::size_t L, double tau) {
  check_indices(ladder, K, L);
  if (K > L) return Complex(0.0, 0.0);
  const MassLadder sub = ladder.sub_ladder(K, L);
  const PartialFractionDecomposition pfd = decompose(sub);
  switch (contour) {
    case Contour::kFeynman:
    case Contour::kRetarded:
      if (tau <= 0.0) return Complex(0.0, 0.0);
      return kI * pole_sum(sub, pfd, contour, tau);
    case Contour::kClosed:
    case Contour::kPlus:
    case Contour::kMinus:
      return pole_sum(sub, pfd, contour, tau);
  }
  return Complex(0.0, 0.0);
}

std::vector<PropagatorValue> propagator_table(const MassLadder& ladder,
                                              Contour contour, std::size_t K,
                                              std::size_t L,
                                              const std::vector<double>& taus) {
  std::vector<PropagatorValue> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    out.push_back({tau, time_domain_propagator(ladder, contour, K, L, tau)});
  }
  return out;
}

Complex numeric_contour_oracle(const MassLadder& ladder, Contour contour,
                               std::size_t K, std::size_t L, double tau,
                               double epsilon, double cutoff) {
  check_indices(ladder, K, L);
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (!(cutoff > 10.0 * ladder.max_mass())) {
    throw InvalidArgument("cutoff must exceed 10 * max mass");
  }
  if (K > L) return Complex(0.0, 0.0);
  const MassLadder sub = ladder.sub_ladder(K, L);
  switch (contour) {
    case Contour::kFeynman:
    case Contour::kRetarded:
      if (K == L && tau == 0.0) {
        throw InvalidArgument(
            "unregularised real-axis propagator is discontinuous at tau = 0");
      }
      return line_integral(sub, tau, epsilon, cutoff);
    case Contour::kClosed:
    case Contour::kPlus:
    case Contour::kMinus:
      return circle_integral(sub, contour, tau);
  }
  return Complex(0.0, 0.0);
}

double oracle_tolerance(const MassLadder& ladder, double epsilon,
                        double cutoff) {
  return 10.0 * (epsilon + ladder.max_mass() / cutoff);
}

Complex jump_at_zero(const MassLadder& ladder, std::size_t K, std::size_t L) {
  return derivative_jump(ladder, K, L, 0);
}

Complex derivative_jump(const MassLadder& ladder, std::size_t K,
                        std::size_t L, int j) {
  check_indices(ladder, K, L);
  if (K > L) throw IndexOrder("jump requires K <= L");
  const MassLadder sub = ladder.sub_ladder(K, L);
  const PartialFractionDecomposition pfd = decompose(sub);
  Complex sum(0.0, 0.0);
  for (std::size_t l = 0; l < sub.size(); ++l) {
    sum += pfd.coefficients[l] * std::pow(-kI * sub[l], j);
  }
  return kI * sum;
}

int smoothness_order(const MassLadder& ladder) {
  const PartialFractionDecomposition pfd = decompose(ladder);
  int m = 0;
  while (static_cast<std::size_t>(m) < ladder.size()) {
    double scale = 0.0;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      scale += std::abs(pfd.coefficients[k]) * std::pow(ladder[k], m);
    }
    if (std::abs(moment(pfd, ladder, m)) > 1e-10 * scale) break;
    ++m;
  }
  return m;
}

double cutoff_probe(const MassLadder& ladder, double cutoff) {
  const double lower = ladder.max_mass() + 1.0;
  if (!(cutoff > lower)) throw InvalidArgument("cutoff below the probe window");
  const std::size_t N = ladder.regulators();
  const auto integrand = [&](double w) {
    return g_f_scalar(ladder, 0, N, Complex(w, 0.0)).real();
  };
  // Logarithmically spaced panels.
  std::vector<double> points{lower};
  while (points.back() * 2.0 < cutoff) points.push_back(points.back() * 2.0);
  points.push_back(cutoff);
  quad::Options opt;
  opt.abs_tol = 1e-13;
  return quad::integrate_panels<double>(integrand, points, opt);
}

}  // namespace pvfilter
