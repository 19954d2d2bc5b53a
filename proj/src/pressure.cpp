#include "acasimir/pressure.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <variant>

#include "acasimir/modes.hpp"
#include "acasimir/quadrature.hpp"

namespace acasimir {
namespace {

constexpr double kPi = std::numbers::pi;

std::string number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct BandContext {
  double k_lo;
  double k_hi;
  ProductBound bound;
};

BandContext prepare(const NoiseBand& band, const CavityConfig& cavity,
                    const QuadratureSettings& settings) {
  band.validate();
  cavity.validate();
  settings.validate();
  const ProductBound bound =
      reflectivity_product_bound(cavity.refl_a, cavity.refl_b, band.omega_lo, band.omega_hi);
  if (bound.knot_max > 1.0 + 2.0 * kPassivitySlack)
    throw Error(ErrorKind::NotPassive, "|r_a r_b| = " + number(bound.knot_max) + " exceeds 1 in band");
  return {band.k_lo(), band.k_hi(), bound};
}

// x = rho exp(i * phase) written as m exp(i psi).
struct Product {
  double modulus;
  double arg;
};

Product product_at(const CavityConfig& cavity, double omega) {
  const Complex rho = eval_reflectivity(cavity.refl_a, omega) * eval_reflectivity(cavity.refl_b, omega);
  return {std::min(std::abs(rho), 1.0), std::arg(rho)};
}

// Re[x/(1-x)] in half-angle form. Exact for small psi, so no separate small-L
// expansion is needed.
double resonance_kernel(double m, double psi) {
  if (m == 0.0) return 0.0;
  if (m >= 1.0) return -0.5;
  const double s = std::sin(0.5 * psi);
  const double s2 = s * s;
  return (m * (1.0 - m) - 2.0 * m * s2) / ((1.0 - m) * (1.0 - m) + 4.0 * m * s2);
}

// Im ln(1 - x), principal branch.
double log_kernel(double m, double psi) {
  if (m == 0.0) return 0.0;
  const double s = std::sin(0.5 * psi);
  return std::atan2(-m * std::sin(psi), (1.0 - m) + 2.0 * m * s * s);
}

QuadratureSettings scaled(const QuadratureSettings& settings, double prefactor) {
  QuadratureSettings s = settings;
  s.abs_tol = settings.abs_tol / std::abs(prefactor);
  return s;
}

void note_convergence(const IntegrationReport& r, double prefactor, ForceResult& out) {
  if (!r.converged)
    out.warnings.push_back("quadrature did not converge (error estimate " +
                           number(std::abs(prefactor) * r.error_estimate) + ")");
}

// Evaluates a (k, u) kernel with the reflectivity product cached per k.
template <class Kernel>
IntegrationReport integrate_band_shell(const NoiseBand& band, const CavityConfig& cavity,
                                       const BandContext& ctx, const QuadratureSettings& settings,
                                       Kernel kernel) {
  const double L = cavity.separation;
  double cached_k = std::numeric_limits<double>::quiet_NaN();
  Product cached{0.0, 0.0};
  auto f = [&](double k, double u) {
    if (k != cached_k) {
      cached = product_at(cavity, band.sound_speed * k);
      cached_k = k;
    }
    return kernel(k, u, cached.modulus, 2.0 * k * L * u + cached.arg);
  };
  return adaptive_integrate(f, Rectangle{{ctx.k_lo, ctx.k_hi}, {0.0, 1.0}},
                            {2.0 * L, 2.0 * ctx.k_hi * L}, settings);
}

ForceResult force_adaptive(const NoiseBand& band, const CavityConfig& cavity, const BandContext& ctx,
                           const QuadratureSettings& settings) {
  const double prefactor = band.spectral_intensity / kPi;
  ForceResult out;
  out.method = Method::Adaptive;
  if (ctx.bound.knot_max >= 1.0 && !ctx.bound.pressure_release_pair)
    out.warnings.push_back(
        "|r_a r_b| = 1 in band: resonance delta contributions are not captured by the "
        "adaptive path (use mode-sum for two perfect reflectors)");
  const auto r = integrate_band_shell(band, cavity, ctx, scaled(settings, prefactor),
                                      [](double, double u, double m, double psi) {
                                        return u * u * resonance_kernel(m, psi);
                                      });
  out.value = prefactor * r.value;
  out.error_estimate = prefactor * r.error_estimate;
  out.evaluations = r.evaluations;
  note_convergence(r, prefactor, out);
  return out;
}

ForceResult force_series(const NoiseBand& band, const CavityConfig& cavity, const BandContext& ctx,
                         const QuadratureSettings& settings) {
  if (!ctx.bound.real_valued)
    throw Error(ErrorKind::SeriesNotApplicable, "series method needs real reflectivities");
  if (!(ctx.bound.sup_bound < 1.0))
    throw Error(ErrorKind::SeriesNotApplicable,
                "series method needs sup |r_a r_b| < 1 in band (bound " + number(ctx.bound.sup_bound) + ")");

  const double L = cavity.separation;
  const double prefactor = band.spectral_intensity / kPi;
  bool capped = false;
  std::size_t terms_evaluated = 0;

  // sum_n rho^n M2c(2 n k L); |M2c| <= 1/3 bounds the tail by
  // |rho|^(N+1) / (3 (1 - |rho|)).
  auto integrand = [&](double k) {
    const double rho = (eval_reflectivity(cavity.refl_a, band.sound_speed * k) *
                        eval_reflectivity(cavity.refl_b, band.sound_speed * k))
                           .real();
    const double m = std::abs(rho);
    if (m == 0.0) return 0.0;
    const double a1 = 2.0 * k * L;
    double power = 1.0;
    double sum = 0.0;
    std::size_t n = 1;
    for (;; ++n) {
      power *= rho;
      sum += power * trig_moment(TrigMoment::SquareCos, static_cast<double>(n) * a1);
      if (std::abs(power) * m / (3.0 * (1.0 - m)) < settings.series_tail_tol) break;
      if (n >= settings.series_max_terms) {
        capped = true;
        break;
      }
    }
    terms_evaluated += n;
    return sum;
  };

  const auto r = adaptive_integrate(integrand, Interval{ctx.k_lo, ctx.k_hi}, 2.0 * L,
                                    scaled(settings, prefactor));
  ForceResult out;
  out.method = Method::Series;
  out.value = prefactor * r.value;
  out.error_estimate = prefactor * r.error_estimate;
  out.evaluations = terms_evaluated;
  note_convergence(r, prefactor, out);
  if (capped)
    out.warnings.push_back("series truncated at series_max_terms before reaching series_tail_tol");
  return out;
}

std::vector<SignChange> find_sign_changes(const std::vector<SweepRow>& rows) {
  std::vector<SignChange> changes;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double a = rows[i].value, b = rows[i + 1].value;
    if (std::isfinite(a) && std::isfinite(b) && ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)))
      changes.push_back({rows[i].separation, rows[i + 1].separation});
  }
  return changes;
}

void check_separations(std::span<const double> separations) {
  for (std::size_t i = 0; i < separations.size(); ++i) {
    if (!(separations[i] > 0.0) || !std::isfinite(separations[i]))
      throw Error(ErrorKind::InvalidArgument, "sweep separations must be positive and finite");
    if (i > 0 && !(separations[i] > separations[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "sweep separations must be strictly increasing");
  }
}

template <class Compute>
SweepResult run_sweep(std::span<const double> separations, Method method, Compute compute) {
  check_separations(separations);
  SweepResult result;
  result.rows.reserve(separations.size());
  for (double L : separations) {
    SweepRow row;
    row.separation = L;
    row.method = method;
    try {
      ForceResult r = compute(L);
      row.value = r.value;
      row.error_estimate = r.error_estimate;
      row.method = r.method;
      row.warnings = std::move(r.warnings);
    } catch (const Error& e) {
      row.value = std::numeric_limits<double>::quiet_NaN();
      row.error_estimate = std::numeric_limits<double>::quiet_NaN();
      row.warnings.push_back(std::string(to_string(e.kind())) + ": " + e.what());
    }
    result.rows.push_back(std::move(row));
  }
  result.sign_changes = find_sign_changes(result.rows);
  return result;
}

}  // namespace

double pressure_outside(const NoiseBand& band) {
  band.validate();
  return band.spectral_intensity * (band.k_hi() - band.k_lo()) / (6.0 * kPi);
}

ForceResult pressure_inside(const NoiseBand& band, const CavityConfig& cavity,
                            const QuadratureSettings& settings) {
  const BandContext ctx = prepare(band, cavity, settings);
  ForceResult out;
  out.method = Method::Adaptive;
  if (ctx.bound.pressure_release_pair) return out;  // D == 0
  if (ctx.bound.knot_max >= 1.0)
    throw Error(ErrorKind::NotStrictlyPassive,
                "inside pressure needs |r_a r_b| < 1 across the band (use casimir_force_perfect "
                "for perfect reflectors)");

  // (I/4 pi) * 2 pi * int dk int du u^2 D(k u)
  const double prefactor = 0.5 * band.spectral_intensity;
  const auto r = integrate_band_shell(band, cavity, ctx, scaled(settings, prefactor),
                                      [](double, double u, double m, double psi) {
                                        const double s = std::sin(0.5 * psi);
                                        const double gap2 = (1.0 - m) * (1.0 - m) + 4.0 * m * s * s;
                                        return u * u * (1.0 - m) * (1.0 + m) / gap2 / kPi;
                                      });
  out.value = prefactor * r.value;
  out.error_estimate = prefactor * r.error_estimate;
  out.evaluations = r.evaluations;
  note_convergence(r, prefactor, out);
  return out;
}

ForceResult casimir_force(const NoiseBand& band, const CavityConfig& cavity, Method method,
                          const QuadratureSettings& settings) {
  const BandContext ctx = prepare(band, cavity, settings);
  switch (method) {
    case Method::Adaptive: return force_adaptive(band, cavity, ctx, settings);
    case Method::Series: return force_series(band, cavity, ctx, settings);
    case Method::ModeSum: break;
  }
  throw Error(ErrorKind::InvalidArgument,
              "casimir_force takes adaptive or series; use casimir_force_perfect for mode-sum");
}

ForceResult casimir_force_perfect(const NoiseBand& band, double separation) {
  band.validate();
  if (!(separation > 0.0) || !std::isfinite(separation))
    throw Error(ErrorKind::InvalidArgument, "plate separation must be positive and finite");

  const double k0 = kPi / separation;
  const double k_lo2 = band.k_lo() * band.k_lo();
  const double k_hi2 = band.k_hi() * band.k_hi();
  const double n_max = std::floor(band.k_hi() / k0);
  if (n_max > 1e9)
    throw Error(ErrorKind::InvalidArgument, "more than 1e9 modes in band; mode sum too long");

  // Each mode n contributes n^2 k0^2 [1/max(n^2 k0^2, k_lo^2) - 1/k_hi^2].
  double sum = 0.0, comp = 0.0;
  const auto count = static_cast<std::size_t>(n_max);
  for (std::size_t n = 1; n <= count; ++n) {
    const double q = static_cast<double>(n * n) * k0 * k0;
    const double term = q / std::max(q, k_lo2) - q / k_hi2;
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  const double inside = band.spectral_intensity * k0 / (4.0 * kPi) * (sum + comp);
  const double outside = pressure_outside(band);

  ForceResult out;
  out.method = Method::ModeSum;
  out.value = inside - outside;
  out.error_estimate = 16.0 * std::numeric_limits<double>::epsilon() * (inside + outside);
  out.evaluations = count;
  return out;
}

ForceResult free_energy(const NoiseBand& band, const CavityConfig& cavity,
                        const QuadratureSettings& settings) {
  const BandContext ctx = prepare(band, cavity, settings);
  if (!(ctx.bound.sup_bound < 1.0))
    throw Error(ErrorKind::NotStrictlyPassive,
                "free energy needs sup |r_a r_b| < 1 across the band (bound " +
                    number(ctx.bound.sup_bound) + ")");

  const double prefactor = band.spectral_intensity / (2.0 * kPi);
  const auto r = integrate_band_shell(band, cavity, ctx, scaled(settings, prefactor),
                                      [](double k, double u, double m, double psi) {
                                        return u * log_kernel(m, psi) / k;
                                      });
  ForceResult out;
  out.method = Method::Adaptive;
  out.value = prefactor * r.value;
  out.error_estimate = prefactor * r.error_estimate;
  out.evaluations = r.evaluations;
  note_convergence(r, prefactor, out);
  return out;
}

ForceResult sphere_plane_force(const NoiseBand& band, const SpherePlaneConfig& config,
                               const QuadratureSettings& settings) {
  config.validate();
  ForceResult energy = free_energy(band, config.as_cavity(), settings);
  const double scale = 2.0 * kPi * config.radius;
  energy.value *= scale;
  energy.error_estimate *= scale;
  if (config.closest_gap / config.radius >= 1.0)
    energy.warnings.push_back("L/R = " + number(config.closest_gap / config.radius) +
                              " >= 1: outside the validity range of the proximity approximation");
  return energy;
}

SweepResult force_sweep(const NoiseBand& band, const CavityConfig& cavity_template,
                        std::span<const double> separations, Method method,
                        const QuadratureSettings& settings) {
  if (method == Method::ModeSum &&
      !(std::holds_alternative<PerfectReflector>(cavity_template.refl_a) &&
        std::holds_alternative<PerfectReflector>(cavity_template.refl_b)))
    throw Error(ErrorKind::InvalidArgument, "mode-sum method requires two perfect reflectors");
  return run_sweep(separations, method, [&](double L) {
    if (method == Method::ModeSum) return casimir_force_perfect(band, L);
    CavityConfig cavity = cavity_template;
    cavity.separation = L;
    return casimir_force(band, cavity, method, settings);
  });
}

SweepResult energy_sweep(const NoiseBand& band, const CavityConfig& cavity_template,
                         std::span<const double> separations, const QuadratureSettings& settings) {
  return run_sweep(separations, Method::Adaptive, [&](double L) {
    CavityConfig cavity = cavity_template;
    cavity.separation = L;
    return free_energy(band, cavity, settings);
  });
}

SweepResult sphere_plane_sweep(const NoiseBand& band, const SpherePlaneConfig& config_template,
                               std::span<const double> gaps, const QuadratureSettings& settings) {
  return run_sweep(gaps, Method::Adaptive, [&](double L) {
    SpherePlaneConfig config = config_template;
    config.closest_gap = L;
    return sphere_plane_force(band, config, settings);
  });
}

}  // namespace acasimir
