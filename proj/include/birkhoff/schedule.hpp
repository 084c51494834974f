#ifndef BIRKHOFF_SCHEDULE_HPP
#define BIRKHOFF_SCHEDULE_HPP

#include <algorithm>
#include <cmath>

namespace birkhoff {

// Geometric temperature decay with a floor: tau(k) = max(tau_min, tau0 * decay^k).
struct AnnealSchedule {
  double tau0 = 1.0;
  double decay = 0.997;
  double tau_min = 0.1;

  double at(long k) const {
    return std::max(tau_min, tau0 * std::pow(decay, static_cast<double>(k)));
  }
};

}  // namespace birkhoff

#endif  // BIRKHOFF_SCHEDULE_HPP
