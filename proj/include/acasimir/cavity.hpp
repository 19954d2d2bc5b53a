#ifndef ACASIMIR_CAVITY_HPP
#define ACASIMIR_CAVITY_HPP

#include "acasimir/reflectivity.hpp"

namespace acasimir {

/// Two parallel plates a distance `separation` apart.
struct CavityConfig {
  double separation = 0.0;  // m
  ReflectivitySpec refl_a = PerfectReflector{};
  ReflectivitySpec refl_b = PerfectReflector{};

  void validate() const;
};

/// Sphere of radius `radius` whose closest point sits `closest_gap` above a plate.
struct SpherePlaneConfig {
  double radius = 0.0;       // m
  double closest_gap = 0.0;  // m
  ReflectivitySpec refl_sphere = PerfectReflector{};
  ReflectivitySpec refl_plane = PerfectReflector{};

  void validate() const;
  CavityConfig as_cavity() const { return {closest_gap, refl_sphere, refl_plane}; }
};

}  // namespace acasimir

#endif  // ACASIMIR_CAVITY_HPP
