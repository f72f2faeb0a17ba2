#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <span>

#include "pvfilter/errors.hpp"

namespace pvfilter::quad {

struct Options {
  /// Absolute error target for every accepted panel.
  double abs_tol = 1e-9;
  int max_depth = 48;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T, class F>
T kronrod_panel(const F& f, double a, double b, double& error) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const T fc = f(mid);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const T sum = f(mid - dx) + f(mid + dx);
    kronrod += sum * kKronrodWeights[i];
    if (i % 2 == 1) gauss += sum * kGaussWeights[i / 2];
  }
  error = std::abs((kronrod - gauss) * half);
  return kronrod * half;
}

template <class T, class F>
T adapt(const F& f, double a, double b, const Options& opt, int depth) {
  double err = 0.0;
  const T value = kronrod_panel<T>(f, a, b, err);
  if (err <= opt.abs_tol) return value;
  if (depth >= opt.max_depth) {
    throw QuadratureFailure("panel did not converge to the requested precision");
  }
  const double mid = 0.5 * (a + b);
  return adapt<T>(f, a, mid, opt, depth + 1) + adapt<T>(f, mid, b, opt, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] by
/// recursive bisection. T is the integrand's value type (double or complex).
template <class T, class F>
T integrate(const F& f, double a, double b, const Options& opt = {}) {
  if (a == b) return T{};
  return detail::adapt<T>(f, a, b, opt, 0);
}

/// Integrates over consecutive panels [p_0, p_1], [p_1, p_2], ... in order.
template <class T, class F>
T integrate_panels(const F& f, std::span<const double> points,
                   const Options& opt = {}) {
  T total{};
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    total += integrate<T>(f, points[i], points[i + 1], opt);
  }
  return total;
}

}  // namespace pvfilter::quad
