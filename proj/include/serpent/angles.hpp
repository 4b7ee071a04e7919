#pragma once

#include "serpent/types.hpp"

#include <cmath>

namespace serpent {

/// atan2(sin a, cos a), mapped into (-pi, pi]. Values already in range pass through.
inline double wrap(double angle) {
  if (angle > -kPi && angle <= kPi) return angle;
  const double w = std::atan2(std::sin(angle), std::cos(angle));
  return w <= -kPi ? kPi : w;
}

}  // namespace serpent
