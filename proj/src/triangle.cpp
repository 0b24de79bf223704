#include "vwergm/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "vwergm/error.hpp"
#include "vwergm/lambert.hpp"

namespace vwergm::triangle {

namespace {

constexpr double kE = 2.718281828459045235360287;

void check_size(int n) {
  if (n <= 4 || n % 2 != 0)
    throw InvalidParameter("triangle: n must be even and greater than 4, got " + std::to_string(n));
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidParameter("triangle: transformed alpha must be positive and finite");
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw InvalidParameter(std::string("triangle: ") + name + " must lie in [0,1]");
}

// tanh argument of the a-equation (which = A) or the b-equation (which = B)
double block_argument(double a, double b, double alpha, int n, Block which) {
  const double half = 0.5 * n;
  const double kappa = alpha / (2.0 * n * static_cast<double>(n)) * (half - 1.0);
  const double c = which == Block::A ? a : b;
  const double s = a + b;
  return kappa * (half * s * s - 2.0 * c * c);
}

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

// Solves 1 - 2c = tanh(y(c)) for c in (0, 1/2], i.e. c = 1 / (1 + e^{2 y(c)}),
// as log c + softplus(2 y(c)) = 0. The left side increases in log c because y
// is nondecreasing in c for n > 4.
template <class Arg>
double solve_log(const Arg& arg) {
  auto F = [&](double l) { return l + softplus(2.0 * arg(std::exp(l))); };
  double lo = -softplus(2.0 * arg(1.0));
  double hi = -softplus(2.0 * arg(0.0));
  if (F(lo) >= 0.0) return lo;
  if (F(hi) <= 0.0) return hi;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (F(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-16 * std::max(1.0, std::abs(lo))) break;
  }
  return 0.5 * (lo + hi);
}

TwoBlockPoint make_point(double a, double b, double alpha, int n) {
  TwoBlockPoint p{a, b, alpha, n, 0.0, 0.0};
  p.residual_a = std::abs(1.0 - 2.0 * a - block_rhs(a, b, alpha, n, Block::A));
  p.residual_b = std::abs(1.0 - 2.0 * b - block_rhs(a, b, alpha, n, Block::B));
  return p;
}

}  // namespace

double transformed_alpha(double model_triangle_weight) { return -3.0 * model_triangle_weight; }

double block_rhs(double a, double b, double alpha, int n, Block which) {
  check_size(n);
  check_alpha(alpha);
  check_unit(a, "a");
  check_unit(b, "b");
  return std::tanh(block_argument(a, b, alpha, n, which));
}

double log_g_of_b(double alpha, int n, double b) {
  check_size(n);
  check_alpha(alpha);
  check_unit(b, "b");
  return solve_log([&](double a) { return block_argument(a, b, alpha, n, Block::A); });
}

double log_h_of_a(double alpha, int n, double a) {
  check_size(n);
  check_alpha(alpha);
  check_unit(a, "a");
  return solve_log([&](double b) { return block_argument(a, b, alpha, n, Block::B); });
}

double g_of_b(double alpha, int n, double b) { return std::exp(log_g_of_b(alpha, n, b)); }
double h_of_a(double alpha, int n, double a) { return std::exp(log_h_of_a(alpha, n, a)); }

EndpointSet endpoints(double alpha, int n) {
  EndpointSet e;
  e.log_a1 = log_g_of_b(alpha, n, 1.0);
  e.log_a2 = log_g_of_b(alpha, n, 0.0);
  e.log_b1 = log_h_of_a(alpha, n, 1.0);
  e.log_b2 = log_h_of_a(alpha, n, 0.0);
  e.a1 = std::exp(e.log_a1);
  e.a2 = std::exp(e.log_a2);
  e.b1 = std::exp(e.log_b1);
  e.b2 = std::exp(e.log_b2);
  return e;
}

TwoBlockPoint symmetric_solution(double alpha, int n) {
  check_size(n);
  check_alpha(alpha);
  const double s = std::exp(solve_log([&](double c) { return block_argument(c, c, alpha, n, Block::A); }));
  return make_point(s, s, alpha, n);
}

std::vector<TwoBlockPoint> solve_two_block(double alpha, int n, int grid) {
  check_size(n);
  check_alpha(alpha);
  if (grid < 1000) throw InvalidParameter("solve_two_block: grid must be >= 1000");

  auto r = [&](double b) { return b - h_of_a(alpha, n, g_of_b(alpha, n, b)); };

  std::vector<TwoBlockPoint> out;
  out.push_back(symmetric_solution(alpha, n));

  std::vector<double> bs;
  double prev = r(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double x1 = static_cast<double>(i) / grid;
    const double cur = r(x1);
    if (cur == 0.0) {
      bs.push_back(x1);
    } else if (prev != 0.0 && (prev < 0) != (cur < 0)) {
      double lo = static_cast<double>(i - 1) / grid, hi = x1, flo = prev;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = r(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      bs.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }

  for (double b : bs) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const TwoBlockPoint& p) { return std::abs(p.b - b) <= 1e-9; });
    if (!dup) out.push_back(make_point(g_of_b(alpha, n, b), b, alpha, n));
  }
  std::sort(out.begin(), out.end(), [](const TwoBlockPoint& x, const TwoBlockPoint& y) { return x.b < y.b; });
  return out;
}

double a2_bound_argument(double alpha, int n) {
  check_size(n);
  check_alpha(alpha);
  const double half = 0.5 * n;
  const double big_n = (half - 1.0) * (half - 2.0) / (2.0 * n * static_cast<double>(n));
  return 4.0 * big_n * alpha;
}

namespace {
bool a2_bound_applies(double z) { return z > std::exp(kE / (kE - 1.0)); }
}  // namespace

std::optional<double> a2_upper_bound(double alpha, int n) {
  const double z = a2_bound_argument(alpha, n);
  if (!a2_bound_applies(z)) return std::nullopt;
  return std::sqrt(std::log(z) / z);
}

std::optional<double> a2_lambert_bound(double alpha, int n) {
  const double z = a2_bound_argument(alpha, n);
  if (!a2_bound_applies(z)) return std::nullopt;
  return std::sqrt(lambert_w0(z) / z);
}

bool a1_lower_check(double alpha, int n, double c) {
  check_size(n);
  if (!(c > static_cast<double>(n - 2) / n))
    throw InvalidParameter("a1_lower_check: c must exceed (n-2)/n");
  return log_g_of_b(alpha, n, 1.0) > -c * alpha;
}

std::optional<double> a1_empirical_threshold(const std::vector<double>& alphas, int n, double c) {
  std::optional<double> threshold;
  for (auto it = alphas.rbegin(); it != alphas.rend(); ++it) {
    if (!a1_lower_check(*it, n, c)) break;
    threshold = *it;
  }
  return threshold;
}

SweepTrajectory sweep(const std::vector<double>& alphas, int n) {
  check_size(n);
  SweepTrajectory traj;
  traj.n = n;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    check_alpha(alphas[i]);
    if (i > 0 && !(alphas[i] > alphas[i - 1]))
      throw InvalidParameter("sweep: alpha values must be strictly increasing");
    SweepEntry e;
    e.alpha = alphas[i];
    e.point = symmetric_solution(alphas[i], n);
    e.ends = endpoints(alphas[i], n);
    e.a2_bound = a2_upper_bound(alphas[i], n);
    traj.entries.push_back(e);
  }
  return traj;
}

void write_sweep_csv(std::ostream& os, const SweepTrajectory& traj, std::optional<double> floor_c) {
  const auto old_prec = os.precision(17);
  os << "alpha,a,b,residual_a,residual_b,a1,a2,a2_bound";
  if (floor_c) os << ",a1_floor";
  os << '\n';
  for (const auto& e : traj.entries) {
    os << e.alpha << ',' << e.point.a << ',' << e.point.b << ',' << e.point.residual_a << ','
       << e.point.residual_b << ',' << e.ends.a1 << ',' << e.ends.a2 << ',';
    if (e.a2_bound) os << *e.a2_bound;
    if (floor_c) os << ',' << std::exp(-*floor_c * e.alpha);
    os << '\n';
  }
  os.precision(old_prec);
}

}  // namespace vwergm::triangle
