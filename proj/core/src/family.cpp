#include "umedest/family.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace umedest {

void ParametricFamily::require_in_range(double theta) const {
  if (!std::isfinite(theta) || !contains(theta)) {
    throw std::invalid_argument(std::string(name()) + ": theta " +
                                std::to_string(theta) +
                                " outside parameter range");
  }
}

double PoissonFamily::theta_max() const {
  return std::numeric_limits<double>::infinity();
}

std::shared_ptr<const IntegerDistribution> PoissonFamily::at(
    double theta) const {
  require_in_range(theta);
  return std::make_shared<PoissonDistribution>(theta);
}

double PoissonFamily::score(int k, double theta) const {
  require_in_range(theta);
  if (k < 0) throw std::invalid_argument("poisson: k must be nonnegative");
  return static_cast<double>(k) / theta - 1.0;
}

double PoissonFamily::fisher_information(double theta) const {
  require_in_range(theta);
  return 1.0 / theta;
}

}  // namespace umedest
