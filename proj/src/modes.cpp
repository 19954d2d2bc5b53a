#include "acasimir/modes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "acasimir/core.hpp"

namespace acasimir {
namespace {

struct Solutions {
  Complex lt, dlt, gt, dgt;
};

Solutions solutions_at(double z, double k, double L, Complex r1, Complex r2) {
  const Complex i{0.0, 1.0};
  const Complex em = std::exp(-i * k * z);
  const Complex ep = std::exp(i * k * z);
  const Complex gp = std::exp(i * k * (z - L));
  const Complex gm = std::exp(-i * k * (z - L));
  return {em + r1 * ep, -i * k * (em - r1 * ep), gp + r2 * gm, i * k * (gp - r2 * gm)};
}

void check_args(double k_z, double L, Complex r1, Complex r2) {
  if (!(k_z > 0.0) || !std::isfinite(k_z))
    throw Error(ErrorKind::InvalidArgument, "k_z must be positive and finite");
  if (!(L > 0.0) || !std::isfinite(L))
    throw Error(ErrorKind::InvalidArgument, "separation must be positive and finite");
  if (!std::isfinite(std::abs(r1)) || !std::isfinite(std::abs(r2)))
    throw Error(ErrorKind::InvalidArgument, "reflectivity is not finite");
}

void check_pole(double k_z, double L, Complex r1, Complex r2) {
  const Complex x = r1 * r2 * std::exp(Complex{0.0, 2.0 * k_z * L});
  if (std::abs(1.0 - x) < kPoleThreshold)
    throw Error(ErrorKind::ResonancePole,
                "resonance pole at k_z = " + std::to_string(k_z) + ", L = " + std::to_string(L));
}

void check_position(double z, double L) {
  if (!(z >= 0.0 && z <= L))
    throw Error(ErrorKind::InvalidArgument, "position must lie in [0, L]");
}

}  // namespace

Complex wronskian(double z, double k_z, double L, Complex r1, Complex r2) {
  check_args(k_z, L, r1, r2);
  const auto s = solutions_at(z, k_z, L, r1, r2);
  return s.lt * s.dgt - s.dlt * s.gt;
}

Complex greens_function(double z, double zp, double k_z, double L, Complex r1, Complex r2) {
  check_args(k_z, L, r1, r2);
  check_position(z, L);
  check_position(zp, L);
  check_pole(k_z, L, r1, r2);
  const double lo = std::min(z, zp);
  const double hi = std::max(z, zp);
  const auto at_lo = solutions_at(lo, k_z, L, r1, r2);
  const auto at_hi = solutions_at(hi, k_z, L, r1, r2);
  return at_lo.lt * at_hi.gt / wronskian(lo, k_z, L, r1, r2);
}

Complex green_stress_kernel(double z, double k_z, double L, Complex r1, Complex r2) {
  check_args(k_z, L, r1, r2);
  check_position(z, L);
  check_pole(k_z, L, r1, r2);
  const auto s = solutions_at(z, k_z, L, r1, r2);
  const Complex w = s.lt * s.dgt - s.dlt * s.gt;
  // At coincidence the mixed derivative is phi_lt'(z) phi_gt'(z) / W.
  return (k_z * k_z * s.lt * s.gt + s.dlt * s.dgt) / w;
}

double mode_density_closed(double k_z, double L, Complex r1, Complex r2) {
  check_args(k_z, L, r1, r2);
  const Complex rho = r1 * r2;
  const double m = std::abs(rho);
  const double psi = 2.0 * k_z * L + std::arg(rho);
  const double s = std::sin(0.5 * psi);
  const double gap2 = (1.0 - m) * (1.0 - m) + 4.0 * m * s * s;
  if (gap2 < kPoleThreshold * kPoleThreshold)
    throw Error(ErrorKind::ResonancePole,
                "resonance pole at k_z = " + std::to_string(k_z) + ", L = " + std::to_string(L));
  return (1.0 - m) * (1.0 + m) / gap2 / std::numbers::pi;
}

double mode_density_from_green(double z, double k_z, double L, Complex r1, Complex r2) {
  check_args(k_z, L, r1, r2);
  if (!(z > 0.0 && z < L))
    throw Error(ErrorKind::InvalidArgument, "position must lie strictly inside (0, L)");
  const Complex n = green_stress_kernel(z, k_z, L, r1, r2);
  return -n.imag() / (std::numbers::pi * k_z);
}

}  // namespace acasimir
