#pragma once

namespace vwergm {

/// Principal branch W0 of the Lambert W function on [-1/e, inf).
/// Throws DomainError for x < -1/e.
double lambert_w0(double x);

/// Lower and upper bounds on W0(x) for x >= e:
///   log x - log log x + log log x / (2 log x)
///   log x - log log x + e/(e-1) log log x / log x
struct LambertBracket {
  double lower;
  double upper;
};
LambertBracket lambert_w0_bracket(double x);

}  // namespace vwergm
