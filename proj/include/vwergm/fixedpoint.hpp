#pragma once

// Mean-field map Phi(X) = (1 + tanh(grad f(X))) / 2, its restriction
// varphi to constant vectors, and solvers/certificates for X = Phi(X).

#include <optional>
#include <vector>

#include "vwergm/model.hpp"

namespace vwergm {

/// (1 + tanh(t)) / 2 evaluated as a logistic in 2t to keep precision in the
/// tails.
double half_tanh_shift(double t);

WeightVector phi(const ModelSpec& spec, const WeightVector& x);

/// |X - Phi(X)|_1.
double residual(const ModelSpec& spec, const WeightVector& x);

/// 5000 C_alpha^2 n^(7/8): the radius of the near-fixed-point set.
double membership_threshold(const ModelSpec& spec);
bool is_member(const ModelSpec& spec, const WeightVector& x);

/// Scalar restriction: varphi(x) is every entry of Phi(x 1_n).
double varphi(const ModelSpec& spec, double x);
double varphi_derivative(const ModelSpec& spec, double x);

struct ScalarRootSet {
  std::vector<double> roots;
  int grid_resolution = 0;
  bool monotone = true;
  /// Locations where varphi(x) - x touches zero without a detected crossing.
  std::vector<double> tangency_suspected;

  bool unique() const { return roots.size() == 1; }
};

/// All roots of varphi(x) = x in [0,1]: sign-change scan on a uniform grid,
/// refinement of interior extrema of varphi(x) - x (to split brackets holding
/// two close roots), then bisection to `tol`.
ScalarRootSet solve_scalar(const ModelSpec& spec, int grid = 10000, double tol = 1e-13);

struct DAlphaEstimate {
  double value = 0.0;
  double witness_y = 0.0;
  int grid_resolution = 0;
};

/// sup_{y != x} |varphi(y) - x| / |y - x| for a fixed point x of varphi.
DAlphaEstimate d_alpha(const ModelSpec& spec, double x, int grid = 10000);

struct FixedPointReport {
  WeightVector solution;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Largest ratio of consecutive step norms (steps above the rounding floor).
  double contraction_estimate = 0.0;
  std::vector<double> step_norms;
};

/// Picard iteration Y <- Phi(Y) until |Phi(Y) - Y|_1 <= tol * n.
FixedPointReport iterate_phi(const ModelSpec& spec, const WeightVector& x0, double tol = 1e-10,
                             int max_iter = 100000);

struct FixedPointBound {
  double value = 0.0;
  double epsilon = 0.0;
  bool epsilon_clamped = false;
};

struct DistanceBounds {
  double c_alpha = 0.0;
  double j_alpha = 0.0;
  std::optional<double> d_alpha;
  bool weights_nonnegative = false;
  bool unique_root = false;
  std::optional<double> root;
  /// eps n + 10000 C^2 eps^(log C / log D) n^(7/8) at the minimizing eps.
  std::optional<FixedPointBound> positive_weights;
  /// 5000 C^2 / (1 - J) n^(7/8), when J < 1.
  std::optional<double> small_weights;
  /// (10000 C^2 + 1) n^(15/16), when D < 1 and C <= 1/D.
  std::optional<double> asymptotic;
};

/// Closed-form distance bounds from the constants. `positive_hypotheses`
/// states whether the weights are nonnegative with a unique scalar root.
DistanceBounds bounds_from_constants(int n, double c_alpha, double j_alpha,
                                     std::optional<double> d_alpha, bool positive_hypotheses);

DistanceBounds distance_bounds(const ModelSpec& spec);

}  // namespace vwergm
