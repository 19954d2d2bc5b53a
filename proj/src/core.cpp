#include "acasimir/core.hpp"

#include <cmath>

namespace acasimir {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutOfTableRange: return "OutOfTableRange";
    case ErrorKind::PassivityViolation: return "PassivityViolation";
    case ErrorKind::TableFormat: return "TableFormat";
    case ErrorKind::ResonancePole: return "ResonancePole";
    case ErrorKind::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorKind::NotPassive: return "NotPassive";
    case ErrorKind::NotStrictlyPassive: return "NotStrictlyPassive";
    case ErrorKind::SeriesNotApplicable: return "SeriesNotApplicable";
  }
  return "Unknown";
}

void NoiseBand::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::InvalidArgument, "noise band: " + msg);
  };
  if (!std::isfinite(omega_lo) || !std::isfinite(omega_hi)) fail("non-finite band edge");
  if (omega_lo < 0.0) fail("omega_lo must be >= 0");
  if (!(omega_lo < omega_hi)) fail("omega_lo must be < omega_hi");
  if (!(spectral_intensity > 0.0) || !std::isfinite(spectral_intensity))
    fail("spectral_intensity must be > 0");
  if (!(sound_speed > 0.0) || !std::isfinite(sound_speed)) fail("sound_speed must be > 0");
}

void QuadratureSettings::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::InvalidArgument, "quadrature settings: " + msg);
  };
  if (!(rel_tol > 0.0)) fail("rel_tol must be > 0");
  if (!(abs_tol > 0.0)) fail("abs_tol must be > 0");
  if (!(series_tail_tol > 0.0)) fail("series_tail_tol must be > 0");
  if (max_subdivisions < 1) fail("max_subdivisions must be >= 1");
  if (min_panels_per_oscillation < 1) fail("min_panels_per_oscillation must be >= 1");
  if (series_max_terms < 1) fail("series_max_terms must be >= 1");
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Adaptive: return "adaptive";
    case Method::Series: return "series";
    case Method::ModeSum: return "mode-sum";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "adaptive") return Method::Adaptive;
  if (text == "series") return Method::Series;
  if (text == "mode-sum") return Method::ModeSum;
  throw Error(ErrorKind::InvalidArgument,
              "unknown method '" + std::string(text) + "' (expected adaptive|series|mode-sum)");
}

}  // namespace acasimir
