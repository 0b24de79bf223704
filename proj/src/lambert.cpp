#include "vwergm/lambert.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vwergm/error.hpp"

namespace vwergm {

namespace {

constexpr double kE = 2.718281828459045235360287;
constexpr double kInvE = 0.3678794411714423215955238;

double initial_guess(double x) {
  if (x < -0.25) {
    // branch-point series in p = sqrt(2 (e x + 1))
    const double p = std::sqrt(std::max(0.0, 2.0 * (kE * x + 1.0)));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }
  if (x < 3.0) return std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  const double l = std::log(x);
  const double ll = std::log(l);
  return l - ll + ll / l;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < -kInvE) {
    // tolerate the rounding of -1/e itself
    if (!(x >= -kInvE - 4 * std::numeric_limits<double>::epsilon()))
      throw DomainError("lambert_w0: argument " + std::to_string(x) + " is below -1/e");
    return -1.0;
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(x);
  for (int it = 0; it < 64; ++it) {
    // Halley step on w e^w - x
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

LambertBracket lambert_w0_bracket(double x) {
  if (!(x >= kE)) throw InvalidParameter("lambert_w0_bracket: requires x >= e");
  const double l = std::log(x);
  const double ll = std::log(l);
  return {l - ll + ll / (2.0 * l), l - ll + kE / (kE - 1.0) * ll / l};
}

}  // namespace vwergm
