#ifndef ACASIMIR_PRESSURE_HPP
#define ACASIMIR_PRESSURE_HPP

#include <span>
#include <string>
#include <vector>

#include "acasimir/cavity.hpp"
#include "acasimir/core.hpp"

namespace acasimir {

// Band-shell integrals are taken over k in [k_lo, k_hi] and u = cos(theta) in
// [0, 1] (k_z = k u >= 0), the azimuth contributing 2 pi. Prefactors:
//   P_out = (I/4 pi^2) int k_z^2/k^4 d^3k = I (k_hi - k_lo) / (6 pi)
//   P_in  = (I/4 pi)   int D(k_z) k_z^2/k^4 d^3k
//   f     = P_in - P_out = (I/pi) int dk int du u^2 Re[x/(1-x)],
// with x = r_a(c k) r_b(c k) exp(2 i k L u).

/// Radiation pressure of the free noise field on one face of a plate.
double pressure_outside(const NoiseBand& band);

/// Pressure of the modes allowed between the plates. Requires
/// |r_a r_b| < 1 across the band, except for the rigid/pressure-release pair
/// whose mode density vanishes identically (returns 0).
ForceResult pressure_inside(const NoiseBand& band, const CavityConfig& cavity,
                            const QuadratureSettings& settings = {});

/// Casimir pressure f = P_in - P_out. Negative is attractive.
///
/// Method::Adaptive integrates Re[x/(1-x)] directly over (k, u) and accepts any
/// passive pair. Where |r_a r_b| = 1 the pointwise value -1/2 is used; outside
/// the rigid/pressure-release pair this misses the resonance comb, so a
/// warning is attached (use casimir_force_perfect for two rigid plates).
///
/// Method::Series expands Re[x/(1-x)] = sum_n rho^n cos(2 n k L u) for real
/// rho = r_a r_b with sup |rho| < 1, integrates each term over u in closed form
/// and the sum over k adaptively. Throws SeriesNotApplicable otherwise.
ForceResult casimir_force(const NoiseBand& band, const CavityConfig& cavity, Method method,
                          const QuadratureSettings& settings = {});

/// Two rigid plates: exact sum over the modes k_z = n pi / L with the in-band
/// (k_x, k_y) annulus of each mode integrated in closed form.
ForceResult casimir_force_perfect(const NoiseBand& band, double separation);

/// Interaction energy per area
///   E(L) = (I/2 pi) int dk/k int du u Im ln(1 - x),
/// the antiderivative of -f that vanishes as L grows. Requires sup |r_a r_b| < 1.
ForceResult free_energy(const NoiseBand& band, const CavityConfig& cavity,
                        const QuadratureSettings& settings = {});

/// Proximity (Derjaguin) force 2 pi R E(L). Warns when L/R >= 1.
ForceResult sphere_plane_force(const NoiseBand& band, const SpherePlaneConfig& config,
                               const QuadratureSettings& settings = {});

struct SweepRow {
  double separation = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
  Method method = Method::Adaptive;
  std::vector<std::string> warnings;
};

struct SignChange {
  double separation_before = 0.0;
  double separation_after = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SignChange> sign_changes;
};

/// Casimir pressure at every separation. `cavity_template.separation` is
/// ignored. Method::ModeSum requires two perfect reflectors. Per-point
/// failures become a NaN row carrying the error text.
SweepResult force_sweep(const NoiseBand& band, const CavityConfig& cavity_template,
                        std::span<const double> separations, Method method,
                        const QuadratureSettings& settings = {});

SweepResult energy_sweep(const NoiseBand& band, const CavityConfig& cavity_template,
                         std::span<const double> separations,
                         const QuadratureSettings& settings = {});

SweepResult sphere_plane_sweep(const NoiseBand& band, const SpherePlaneConfig& config_template,
                               std::span<const double> gaps,
                               const QuadratureSettings& settings = {});

}  // namespace acasimir

#endif  // ACASIMIR_PRESSURE_HPP
