#ifndef ACASIMIR_CORE_HPP
#define ACASIMIR_CORE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acasimir {

// All quantities are SI. Positive force/pressure is repulsive, negative is
// attractive.

enum class ErrorKind {
  InvalidArgument,
  OutOfTableRange,
  PassivityViolation,
  TableFormat,
  ResonancePole,
  NonFiniteIntegrand,
  NotPassive,
  NotStrictlyPassive,
  SeriesNotApplicable,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Band-limited broadband noise of constant spectral intensity.
///
/// `spectral_intensity` is intensity per unit angular frequency (W s/m^2), so
/// integrating it over [omega_lo, omega_hi] gives the total intensity.
struct NoiseBand {
  double omega_lo = 0.0;  // rad/s
  double omega_hi = 0.0;  // rad/s
  double spectral_intensity = 1.0;
  double sound_speed = 343.0;  // m/s

  double k_lo() const { return omega_lo / sound_speed; }
  double k_hi() const { return omega_hi / sound_speed; }

  /// Throws Error(InvalidArgument) unless 0 <= omega_lo < omega_hi and the
  /// intensity and sound speed are positive and finite.
  void validate() const;
};

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  std::size_t max_subdivisions = 4000;
  std::size_t min_panels_per_oscillation = 2;
  std::size_t series_max_terms = 200000;
  double series_tail_tol = 1e-15;

  void validate() const;
};

enum class Method { Adaptive, Series, ModeSum };

std::string_view to_string(Method method);
/// Parses "adaptive", "series" or "mode-sum".
Method parse_method(std::string_view text);

/// A computed pressure (Pa), force (N) or energy per area (J/m^2) together
/// with its error estimate and the code path that produced it.
struct ForceResult {
  double value = 0.0;
  double error_estimate = 0.0;
  Method method = Method::Adaptive;
  std::size_t evaluations = 0;
  std::vector<std::string> warnings;
};

}  // namespace acasimir

#endif  // ACASIMIR_CORE_HPP
