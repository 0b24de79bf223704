#pragma once

// Block-vector compression of a weight vector: the per-vertex gradient
// inner products <u^q, v_j^q> are replaced by inner products of randomly
// projected, lattice-snapped images, so vertices whose snapped v-images agree
// receive identical values.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "vwergm/model.hpp"

namespace vwergm {

/// ceil(2 log(1/delta) / (delta^2/2 - delta^3/3)).
int projection_dim(double delta);

struct ProjectionMap {
  int n = 0;
  int k = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd basis;  // k x n, orthonormal rows
  double scale = 0.0;     // sqrt(n / k)

  /// g(v) = sqrt(n/k) * pi(v) in basis coordinates.
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  /// Largest |<b_i, b_j> - [i == j]| over basis rows.
  double orthonormality_error() const;
};

/// Throws CapacityError when the dimension for `delta` exceeds n / 4.
ProjectionMap build_projection(int n, double delta, std::uint64_t seed);
ProjectionMap build_projection_k(int n, int k, std::uint64_t seed, double delta = 0.0);

/// Cubic lattice of spacing delta / sqrt(k) restricted to the ball of radius
/// 2 + delta/2. Every point of the radius-2 ball lies within delta/2 of it.
class DeltaNet {
 public:
  static constexpr double kRadius = 2.0;

  DeltaNet(int k, double delta);

  int k() const { return k_; }
  double delta() const { return delta_; }
  double spacing() const { return spacing_; }

  /// Lattice coordinates of the net point assigned to `x`; points outside
  /// the radius-2 ball are first projected radially onto it.
  std::vector<std::int64_t> snap(const Eigen::VectorXd& x) const;
  Eigen::VectorXd point(const std::vector<std::int64_t>& coords) const;
  bool contains(const std::vector<std::int64_t>& coords) const;

  /// Volume estimate of the net size, natural log.
  double log_size_estimate() const;
  /// log((1 + 4/delta)^(k+1)).
  double log_reference_bound() const;

  /// Materializes all net points; CapacityError when the estimate exceeds
  /// `max_points`.
  std::vector<std::vector<std::int64_t>> points(std::size_t max_points = 1u << 22) const;

  struct CoverageReport {
    std::uint64_t probes = 0;
    std::uint64_t failures = 0;
    double max_distance = 0.0;
  };
  /// Uniform probes in the radius-2 ball checked for a net point within delta.
  CoverageReport probe_coverage(std::uint64_t probes, std::uint64_t seed) const;

 private:
  int k_;
  double delta_;
  double spacing_;
};

struct BlockVector {
  std::vector<double> values;
  std::vector<int> community_of;
  int community_count = 0;
};

struct CompressionResult {
  BlockVector block;
  int k = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  /// Net-derived ceiling on the community count, natural log.
  double log_community_bound = 0.0;
  double log_net_size = 0.0;
  double log_reference_net_bound = 0.0;
  double max_u_norm = 0.0;
};

CompressionResult compress(const ModelSpec& spec, const WeightVector& x, double delta, std::uint64_t seed);
CompressionResult compress_with(const ModelSpec& spec, const WeightVector& x, const ProjectionMap& proj);

struct CompressionReport {
  double distance = 0.0;
  double theorem_bound = 0.0;
  double proof_bound = 0.0;
  bool theorem_bound_holds = false;
  bool proof_bound_holds = false;
  bool theorem_bound_vacuous = false;
  bool proof_bound_vacuous = false;
  double residual = 0.0;
  bool member = false;
};

CompressionReport compression_report(const ModelSpec& spec, const WeightVector& x, const BlockVector& block,
                                     double delta);

/// Mean |X - X*|_1 over compressions with seeds derive_seed(base, 0..count-1).
double mean_compression_distance(const ModelSpec& spec, const WeightVector& x, double delta,
                                 std::uint64_t base_seed, int count);

}  // namespace vwergm
