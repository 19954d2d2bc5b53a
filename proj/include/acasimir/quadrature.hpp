#ifndef ACASIMIR_QUADRATURE_HPP
#define ACASIMIR_QUADRATURE_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <optional>

#include "acasimir/core.hpp"

namespace acasimir {

struct IntegrationReport {
  double value = 0.0;
  double error_estimate = 0.0;
  /// Panels in the final partition. For rectangles: outer panels plus every
  /// inner panel used at the final outer nodes.
  std::size_t panels_used = 0;
  bool converged = false;
  std::size_t evaluations = 0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Rectangle {
  Interval x;
  Interval y;
};

/// Globally adaptive Gauss-Kronrod integration on a finite interval.
///
/// Every panel is evaluated with the 21-point Kronrod rule; the embedded
/// 10-point Gauss rule gives the panel error |K21 - G10|. The panel with the
/// largest error is bisected until the summed error is at most
/// max(abs_tol, rel_tol |value|) or `max_subdivisions` panels exist.
///
/// With an oscillation scale w (rad per unit of x) the initial panels are no
/// wider than 2 pi / (min_panels_per_oscillation * w).
///
/// Throws Error(NonFiniteIntegrand) if f returns NaN or infinity. Budget
/// exhaustion is reported through `converged == false`.
IntegrationReport adaptive_integrate(const std::function<double(double)>& f, Interval domain,
                                     std::optional<double> oscillation_scale,
                                     const QuadratureSettings& settings);

/// Iterated adaptive integration over a rectangle: outer axis x, inner axis y.
///
/// Inner integrals run with rel_tol / 4 and abs_tol / (4 * width(x)); their
/// error estimates are integrated with the outer Kronrod weights and added to
/// the outer error.
IntegrationReport adaptive_integrate(const std::function<double(double, double)>& f,
                                     Rectangle domain,
                                     std::array<std::optional<double>, 2> oscillation_scale,
                                     const QuadratureSettings& settings);

enum class TrigMoment {
  SquareCos,  // M2c(a) = int_0^1 u^2 cos(a u) du
  LinearSin,  // M1s(a) = int_0^1 u sin(a u) du
};

// Below this |a| the moments are summed from their Taylor series.
inline constexpr double kTrigMomentTaylorThreshold = 1.0;

/// Closed-form moments, with a Taylor series for a < kTrigMomentTaylorThreshold.
double trig_moment(TrigMoment which, double a);

}  // namespace acasimir

#endif  // ACASIMIR_QUADRATURE_HPP
