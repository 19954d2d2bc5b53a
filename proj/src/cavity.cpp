#include "acasimir/cavity.hpp"

#include <cmath>

#include "acasimir/core.hpp"

namespace acasimir {

void CavityConfig::validate() const {
  if (!(separation > 0.0) || !std::isfinite(separation))
    throw Error(ErrorKind::InvalidArgument, "plate separation must be positive and finite");
}

void SpherePlaneConfig::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorKind::InvalidArgument, "sphere radius must be positive and finite");
  if (!(closest_gap > 0.0) || !std::isfinite(closest_gap))
    throw Error(ErrorKind::InvalidArgument, "closest gap must be positive and finite");
}

}  // namespace acasimir
