#ifndef ACASIMIR_REFLECTIVITY_HPP
#define ACASIMIR_REFLECTIVITY_HPP

#include <complex>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace acasimir {

using Complex = std::complex<double>;

// Tolerance on |r| <= 1 for stored and interpolated reflectivities.
inline constexpr double kPassivitySlack = 1e-12;

/// Frequency-independent reflectivity. Construction rejects |r| > 1.
class ConstantReflectivity {
 public:
  explicit ConstantReflectivity(Complex r);
  Complex value() const { return r_; }

 private:
  Complex r_;
};

struct PerfectReflector {};
struct PressureRelease {};

struct ReflectivitySample {
  double omega = 0.0;  // rad/s
  Complex r;
};

/// Tabulated r(omega) with component-wise linear interpolation between knots.
///
/// Requires at least two samples, strictly increasing in omega, each with
/// |r| <= 1. Linear interpolation keeps |r| <= 1 between passive knots.
class ReflectivityTable {
 public:
  explicit ReflectivityTable(std::vector<ReflectivitySample> samples);

  /// Reads three columns `omega_rad_per_s, re_r, im_r` after a mandatory
  /// header line. Commas, tabs or spaces separate fields; blank lines and
  /// lines starting with '#' are skipped. Diagnostics name the file and line.
  static ReflectivityTable load(const std::filesystem::path& path);

  std::span<const ReflectivitySample> samples() const { return samples_; }
  double omega_min() const { return samples_.front().omega; }
  double omega_max() const { return samples_.back().omega; }

  Complex interpolate(double omega) const;

 private:
  std::vector<ReflectivitySample> samples_;
};

using ReflectivitySpec =
    std::variant<ConstantReflectivity, PerfectReflector, PressureRelease, ReflectivityTable>;

/// r(omega). Throws OutOfTableRange for table queries outside the sampled
/// range and InvalidArgument for negative or non-finite omega.
Complex eval_reflectivity(const ReflectivitySpec& spec, double omega);

/// True when every value the spec can produce has zero imaginary part.
bool is_real_valued(const ReflectivitySpec& spec);

/// Throws OutOfTableRange unless the spec can be evaluated on the whole of
/// [omega_lo, omega_hi].
void require_coverage(const ReflectivitySpec& spec, double omega_lo, double omega_hi);

/// Bounds on |r_a(omega) r_b(omega)| over a frequency interval.
struct ProductBound {
  /// Upper bound on the supremum. Exact for piecewise-constant magnitudes;
  /// on a segment between merged knots uses max|r_a| * max|r_b| at its ends.
  double sup_bound = 0.0;
  /// Largest |r_a r_b| at any knot or interval end.
  double knot_max = 0.0;
  /// True when r_a r_b == -1 identically (a rigid surface facing a
  /// pressure-release surface).
  bool pressure_release_pair = false;
  bool real_valued = false;
};

ProductBound reflectivity_product_bound(const ReflectivitySpec& a, const ReflectivitySpec& b,
                                        double omega_lo, double omega_hi);

}  // namespace acasimir

#endif  // ACASIMIR_REFLECTIVITY_HPP
