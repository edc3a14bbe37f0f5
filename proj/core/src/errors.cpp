#include "scpulse/errors.hpp"

#include <cmath>
#include <sstream>

namespace scpulse {

void require_h_admissible(double h) {
  if (!(std::abs(1.0 - h) >= kHGap)) {
    std::ostringstream os;
    os.precision(17);
    os << "h = " << h << " is within " << kHGap << " of 1";
    throw HNearOne(os.str());
  }
}

}  // namespace scpulse
