#pragma once

// Two-block analysis of the triangle Hamiltonian f = (alpha/n^2) sum X_i X_k X_j
// at p = 1/2. Vertices split into halves carrying weights a and b. Formulas
// use the transformed weight: the factor 3 from the discrete derivative is
// absorbed and the sign is flipped, so a repulsive triangle weight appears as
// alpha > 0 and the fixed point satisfies
//
//   1 - 2a = tanh( alpha/(2n^2) (n/2 - 1) ( (n/2)(a+b)^2 - 2a^2 ) )
//   1 - 2b = tanh( alpha/(2n^2) (n/2 - 1) ( (n/2)(a+b)^2 - 2b^2 ) )

#include <iosfwd>
#include <optional>
#include <vector>

namespace vwergm::triangle {

enum class Block { A, B };

/// Converts a triangle clique weight of a model (m = 3, p = 1/2) into the
/// transformed weight used here: multiply by 3 and negate.
double transformed_alpha(double model_triangle_weight);

struct TwoBlockPoint {
  double a = 0.0;
  double b = 0.0;
  double alpha = 0.0;
  int n = 0;
  double residual_a = 0.0;
  double residual_b = 0.0;
};

struct EndpointSet {
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
  // natural logs, accurate where the values underflow
  double log_a1 = 0.0, log_a2 = 0.0, log_b1 = 0.0, log_b2 = 0.0;
};

/// Right-hand side of the a-equation (Block::A) or b-equation (Block::B).
double block_rhs(double a, double b, double alpha, int n, Block which);

/// The unique a solving the a-equation for fixed b; h_of_a is the b-equation
/// counterpart. log_* variants return the natural log of the solution.
double g_of_b(double alpha, int n, double b);
double h_of_a(double alpha, int n, double a);
double log_g_of_b(double alpha, int n, double b);
double log_h_of_a(double alpha, int n, double a);

EndpointSet endpoints(double alpha, int n);

/// The symmetric solution a = b.
TwoBlockPoint symmetric_solution(double alpha, int n);

/// All intersections of g and h detected on a grid over b in [0,1], always
/// including the symmetric solution. Sorted by b.
std::vector<TwoBlockPoint> solve_two_block(double alpha, int n, int grid = 1000);

/// sqrt(log(4 N alpha) / (4 N alpha)), N = (n/2 - 1)(n/2 - 2) / (2 n^2);
/// empty when 4 N alpha <= e^(e/(e-1)).
std::optional<double> a2_upper_bound(double alpha, int n);

/// The intermediate bound sqrt(W0(4 N alpha) / (4 N alpha)) under the same
/// applicability condition.
std::optional<double> a2_lambert_bound(double alpha, int n);

/// 4 N alpha.
double a2_bound_argument(double alpha, int n);

/// Whether a1 > exp(-c alpha); requires c > (n-2)/n.
bool a1_lower_check(double alpha, int n, double c);

/// Smallest alpha in the increasing list after which a1_lower_check holds for
/// every remaining entry; empty if it fails at the last entry.
std::optional<double> a1_empirical_threshold(const std::vector<double>& alphas, int n, double c);

struct SweepEntry {
  double alpha = 0.0;
  TwoBlockPoint point;
  EndpointSet ends;
  std::optional<double> a2_bound;
};

struct SweepTrajectory {
  int n = 0;
  std::vector<SweepEntry> entries;
};

SweepTrajectory sweep(const std::vector<double>& alphas, int n);

/// CSV with columns alpha,a,b,residual_a,residual_b,a1,a2,a2_bound and, when
/// `floor_c` is given, a trailing a1_floor = exp(-c alpha).
void write_sweep_csv(std::ostream& os, const SweepTrajectory& traj,
                     std::optional<double> floor_c = std::nullopt);

}  // namespace vwergm::triangle
