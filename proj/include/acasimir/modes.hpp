#ifndef ACASIMIR_MODES_HPP
#define ACASIMIR_MODES_HPP

#include "acasimir/reflectivity.hpp"

namespace acasimir {

// Distance |1 - r1 r2 exp(2 i k_z L)| below which a point is treated as a
// resonance pole.
inline constexpr double kPoleThreshold = 1e-12;

struct ModeDensityPoint {
  double k_z = 0.0;
  double density = 0.0;
};

/// Wronskian phi_lt * dphi_gt - dphi_lt * phi_gt of the two one-sided
/// solutions
///   phi_lt(z) = exp(-i k z) + r1 exp(i k z)
///   phi_gt(z) = exp(i k (z - L)) + r2 exp(-i k (z - L)),
/// evaluated numerically at `z`. Analytically 2 i k exp(-i k L) (1 - r1 r2 exp(2 i k L)).
Complex wronskian(double z, double k_z, double L, Complex r1, Complex r2);

/// Two-point Green's function phi_lt(min(z, zp)) phi_gt(max(z, zp)) / W of the
/// 1D Helmholtz problem between plates at z = 0 and z = L.
///
/// Throws ResonancePole when |1 - r1 r2 exp(2 i k_z L)| < kPoleThreshold.
Complex greens_function(double z, double zp, double k_z, double L, Complex r1, Complex r2);

/// k_z^2 G(z, z) + d/dz d/dz' G(z, z')|_{z'=z}, the pressure plus velocity
/// field combination entering the normal stress. Independent of z.
Complex green_stress_kernel(double z, double k_z, double L, Complex r1, Complex r2);

/// Density of modes per unit k_z:
///   (1/pi) Re[(1 + x) / (1 - x)],  x = r1 r2 exp(2 i k_z L).
/// Evaluated in the half-angle form (1 - |x|^2) / ((1 - |x|)^2 + 4 |x| sin^2(psi/2))
/// so that it stays non-negative and accurate near resonances.
double mode_density_closed(double k_z, double L, Complex r1, Complex r2);

/// The same density built from the Green's function at interior point z:
/// -Im(green_stress_kernel) / (pi k_z), i.e. the 1/(2 k_z^2) normalization
/// fixed by the free-space limit followed by the Jacobian 2 k_z from k_z^2 to k_z.
double mode_density_from_green(double z, double k_z, double L, Complex r1, Complex r2);

}  // namespace acasimir

#endif  // ACASIMIR_MODES_HPP
