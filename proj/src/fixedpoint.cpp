#include "vwergm/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vwergm/error.hpp"

namespace vwergm {

namespace {

constexpr double kGolden = 0.6180339887498949;
// |varphi(x) - x| below this at an extremum without a crossing is reported
// as a suspected double root.
constexpr double kTangencyTol = 1e-9;
// Fixed-point tolerance accepted by d_alpha.
constexpr double kFixedPointTol = 1e-9;

// Product (1 - 1/n)(1 - 2/n)...(1 - (m-1)/n) = (n-1)_(m-1) / n^(m-1).
double finite_size_factor(int n, int m) {
  double r = 1.0;
  for (int i = 1; i < m; ++i) r *= 1.0 - static_cast<double>(i) / n;
  return r;
}

double varphi_argument(const ModelSpec& spec, double x) {
  double arg = spec.tilt();
  for (const auto& t : spec.terms())
    arg += 0.5 * t.m * t.alpha * finite_size_factor(spec.n(), t.m) * std::pow(x, t.m - 1);
  return arg;
}

template <class F>
double bisect_root(const F& h, double lo, double hi, double tol) {
  double flo = h(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = h(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section search for the maximizer of `score` on [lo, hi].
template <class F>
double golden_max(const F& score, double lo, double hi, int iters = 120) {
  double a = lo, b = hi;
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = score(c), fd = score(d);
  for (int i = 0; i < iters && b - a > 1e-15; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = score(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = score(d);
    }
  }
  return fc >= fd ? c : d;
}

double sign_of(double v) { return v < 0 ? -1.0 : 1.0; }

}  // namespace

double half_tanh_shift(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-2.0 * t));
  const double e = std::exp(2.0 * t);
  return e / (1.0 + e);
}

WeightVector phi(const ModelSpec& spec, const WeightVector& x) {
  auto g = gradient(spec, x);
  for (double& v : g) v = half_tanh_shift(v);
  return WeightVector(std::move(g));
}

double residual(const ModelSpec& spec, const WeightVector& x) {
  const auto image = phi(spec, x);
  double r = 0.0;
  for (int j = 0; j < x.size(); ++j) r += std::abs(x[j] - image[j]);
  return r;
}

double membership_threshold(const ModelSpec& spec) {
  const double c = constants(spec).c_alpha;
  return 5000.0 * c * c * std::pow(static_cast<double>(spec.n()), 7.0 / 8.0);
}

bool is_member(const ModelSpec& spec, const WeightVector& x) {
  return residual(spec, x) <= membership_threshold(spec);
}

double varphi(const ModelSpec& spec, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw InvalidParameter("varphi: x = " + std::to_string(x) + " outside [0,1]");
  return half_tanh_shift(varphi_argument(spec, x));
}

double varphi_derivative(const ModelSpec& spec, double x) {
  const double v = varphi(spec, x);
  double slope = 0.0;
  for (const auto& t : spec.terms())
    slope += 0.5 * t.m * t.alpha * finite_size_factor(spec.n(), t.m) * (t.m - 1) * std::pow(x, t.m - 2);
  return 2.0 * v * (1.0 - v) * slope;
}

ScalarRootSet solve_scalar(const ModelSpec& spec, int grid, double tol) {
  if (grid < 1000) throw InvalidParameter("solve_scalar: grid must be >= 1000");
  if (!(tol > 0)) throw InvalidParameter("solve_scalar: tol must be positive");

  auto h = [&](double x) { return varphi(spec, x) - x; };
  const auto at = [grid](int i) { return static_cast<double>(i) / grid; };

  std::vector<double> hv(static_cast<std::size_t>(grid) + 1);
  std::vector<double> pv(hv.size());
  for (int i = 0; i <= grid; ++i) {
    pv[static_cast<std::size_t>(i)] = varphi(spec, at(i));
    hv[static_cast<std::size_t>(i)] = pv[static_cast<std::size_t>(i)] - at(i);
  }

  ScalarRootSet out;
  out.grid_resolution = grid;
  for (int i = 0; i < grid; ++i)
    if (pv[static_cast<std::size_t>(i) + 1] < pv[static_cast<std::size_t>(i)] - 1e-15) {
      out.monotone = false;
      break;
    }

  std::vector<double> roots;
  for (int i = 0; i <= grid; ++i) {
    const double hi = hv[static_cast<std::size_t>(i)];
    if (hi == 0.0) {
      roots.push_back(at(i));
      continue;
    }
    if (i < grid) {
      const double hn = hv[static_cast<std::size_t>(i) + 1];
      if (hn != 0.0 && (hi < 0) != (hn < 0)) roots.push_back(bisect_root(h, at(i), at(i + 1), tol));
    }
  }

  // An interior local minimum of |h| without a crossing may hide two roots
  // inside one grid cell, or a double root.
  for (int i = 1; i < grid; ++i) {
    const double a = hv[static_cast<std::size_t>(i) - 1];
    const double b = hv[static_cast<std::size_t>(i)];
    const double c = hv[static_cast<std::size_t>(i) + 1];
    if (a == 0.0 || b == 0.0 || c == 0.0) continue;
    if ((a < 0) != (b < 0) || (b < 0) != (c < 0)) continue;
    if (!(std::abs(b) <= std::abs(a) && std::abs(b) <= std::abs(c))) continue;
    const double s = sign_of(b);
    const double lo = at(i - 1), hi = at(i + 1);
    const double xe = golden_max([&](double x) { return -s * h(x); }, lo, hi);
    const double he = h(xe);
    if ((he < 0) != (b < 0) && he != 0.0) {
      roots.push_back(bisect_root(h, lo, xe, tol));
      roots.push_back(bisect_root(h, xe, hi, tol));
    } else if (std::abs(he) <= kTangencyTol) {
      out.tangency_suspected.push_back(xe);
    }
  }

  std::sort(roots.begin(), roots.end());
  for (double r : roots)
    if (out.roots.empty() || r - out.roots.back() > 2.0 * tol) out.roots.push_back(r);
  return out;
}

DAlphaEstimate d_alpha(const ModelSpec& spec, double x, int grid) {
  if (grid < 2) throw InvalidParameter("d_alpha: grid too small");
  if (!(x >= 0.0 && x <= 1.0) || std::abs(varphi(spec, x) - x) > kFixedPointTol)
    throw InvalidParameter("d_alpha: x = " + std::to_string(x) + " is not a fixed point of varphi");

  auto ratio = [&](double y) { return std::abs(varphi(spec, y) - x) / std::abs(y - x); };

  DAlphaEstimate est;
  est.grid_resolution = grid;
  est.value = std::abs(varphi_derivative(spec, x));
  est.witness_y = x;
  int best = -1;
  for (int i = 0; i <= grid; ++i) {
    const double y = static_cast<double>(i) / grid;
    if (std::abs(y - x) < 1e-12) continue;
    const double r = ratio(y);
    if (r > est.value) {
      est.value = r;
      est.witness_y = y;
      best = i;
    }
  }
  if (best >= 0) {
    double lo = std::max(0.0, static_cast<double>(best - 1) / grid);
    double hi = std::min(1.0, static_cast<double>(best + 1) / grid);
    if (lo < x && x < hi) (est.witness_y < x ? hi : lo) = x;
    const double y = golden_max([&](double t) { return std::abs(t - x) < 1e-12 ? 0.0 : ratio(t); }, lo, hi);
    if (std::abs(y - x) >= 1e-12 && ratio(y) > est.value) {
      est.value = ratio(y);
      est.witness_y = y;
    }
  }
  return est;
}

FixedPointReport iterate_phi(const ModelSpec& spec, const WeightVector& x0, double tol, int max_iter) {
  if (!(tol > 0)) throw InvalidParameter("iterate_phi: tol must be positive");
  if (x0.size() != spec.n()) throw InvalidParameter("iterate_phi: start vector has wrong dimension");
  const double n = spec.n();
  const double noise_floor = 1e-6 * n;

  FixedPointReport rep;
  WeightVector cur = x0;
  double prev_step = -1.0;
  for (int t = 0;; ++t) {
    WeightVector next = phi(spec, cur);
    double step = 0.0;
    for (int j = 0; j < spec.n(); ++j) step += std::abs(next[j] - cur[j]);
    rep.step_norms.push_back(step);
    if (prev_step >= noise_floor) rep.contraction_estimate = std::max(rep.contraction_estimate, step / prev_step);
    if (step <= tol * n) {
      rep.solution = std::move(cur);
      rep.residual = step;
      rep.iterations = t;
      rep.converged = true;
      return rep;
    }
    if (t >= max_iter) {
      rep.solution = std::move(cur);
      rep.residual = step;
      rep.iterations = t;
      rep.converged = false;
      return rep;
    }
    prev_step = step;
    cur = std::move(next);
  }
}

DistanceBounds bounds_from_constants(int n, double c_alpha, double j_alpha, std::optional<double> d,
                                     bool positive_hypotheses) {
  DistanceBounds b;
  b.c_alpha = c_alpha;
  b.j_alpha = j_alpha;
  b.d_alpha = d;
  const double nn = n;
  const double c2 = c_alpha * c_alpha;

  if (j_alpha < 1.0) b.small_weights = 5000.0 * c2 / (1.0 - j_alpha) * std::pow(nn, 7.0 / 8.0);

  if (positive_hypotheses && d && *d < 1.0) {
    FixedPointBound fb;
    if (*d <= 0.0) {
      // varphi is constant: one iteration lands on the root, eps -> 0.
      fb.value = 10000.0 * c2 * std::pow(nn, 7.0 / 8.0);
      fb.epsilon = 0.0;
    } else {
      const double log_c = std::log(c_alpha), log_d = std::log(*d);
      const double base = std::log(1.0 / *d) / (10000.0 * c2 * log_c) * std::pow(nn, 1.0 / 8.0);
      double eps = std::pow(base, log_d / std::log(c_alpha / *d));
      if (!(eps > 0.0)) {
        eps = std::numeric_limits<double>::min();
        fb.epsilon_clamped = true;
      } else if (eps >= 1.0) {
        eps = std::nextafter(1.0, 0.0);
        fb.epsilon_clamped = true;
      }
      fb.epsilon = eps;
      fb.value = eps * nn + 10000.0 * c2 * std::pow(eps, log_c / log_d) * std::pow(nn, 7.0 / 8.0);
    }
    b.positive_weights = fb;
    if (c_alpha <= 1.0 / *d) b.asymptotic = (10000.0 * c2 + 1.0) * std::pow(nn, 15.0 / 16.0);
  }
  return b;
}

DistanceBounds distance_bounds(const ModelSpec& spec) {
  const auto k = constants(spec);
  const auto roots = solve_scalar(spec);
  std::optional<double> d;
  if (roots.unique()) d = d_alpha(spec, roots.roots.front()).value;
  auto b = bounds_from_constants(spec.n(), k.c_alpha, k.j_alpha, d,
                                 spec.weights_nonnegative() && roots.unique());
  b.weights_nonnegative = spec.weights_nonnegative();
  b.unique_root = roots.unique();
  if (roots.unique()) b.root = roots.roots.front();
  return b;
}

}  // namespace vwergm
