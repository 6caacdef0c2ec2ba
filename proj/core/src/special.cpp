#include "kicktop/special.hpp"

#include <cmath>
#include <stdexcept>

namespace kicktop {

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: argument must be positive");
  if (std::isinf(x)) return x;

  double shift = 0.0;
  while (x < 6.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // Bernoulli-number tail: B_2k / (2k x^2k) for k = 1..6.
  const double r = 1.0 / (x * x);
  const double tail =
      r * (1.0 / 12 -
           r * (1.0 / 120 -
                r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760))))));
  return shift + std::log(x) - 0.5 / x - tail;
}

}  // namespace kicktop
