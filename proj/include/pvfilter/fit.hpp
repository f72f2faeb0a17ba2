#pragma once

#include <span>

namespace pvfilter {

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log|y| against log|x|.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace pvfilter
