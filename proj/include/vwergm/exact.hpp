#pragma once

// Brute-force oracle over {0,1}^n: exact normalization, moments, sampling and
// enumeration checks of the closed forms in model.hpp.
//
// The normalizer is Z = sum_X exp(f(X)) with f already containing the
// gamma |X|_1 tilt, so the vertex prior (1-p)^n cancels from probabilities;
// psi_n adds n log(1-p) back to match the usual normalization-constant
// convention.

#include <cstdint>
#include <optional>
#include <vector>

#include "vwergm/model.hpp"

namespace vwergm {

inline constexpr int kMaxEnumerateN = 24;
inline constexpr int kMaxExactSampleN = 20;

struct ExactSummary {
  int n = 0;
  double log_partition = 0.0;
  double psi_n = 0.0;
  std::vector<double> mean;
  /// Row-major n x n matrix of E[X_i X_j].
  std::vector<double> pair_corr;
  /// Largest |incremental - direct| Hamiltonian difference seen in
  /// cross-check mode (0 otherwise).
  double cross_check_error = 0.0;

  double pair(int i, int j) const { return pair_corr[static_cast<std::size_t>(i) * n + j]; }
};

struct EnumerationOptions {
  bool reverse = false;
  bool cross_check = false;
  int threads = 1;
};

ExactSummary exact_summary(const ModelSpec& spec, const EnumerationOptions& opts = {});

std::vector<BinaryConfig> exact_sample(const ModelSpec& spec, int count, std::uint64_t seed);

/// Brute-force C_j^m: sum over ordered distinct (m-1)-tuples avoiding j.
double enumerate_clique_entry(const WeightVector& x, int j, int m);
/// Brute-force T_m: sum over ordered distinct m-tuples.
double enumerate_clique_total(const WeightVector& x, int m);

struct GradientVerification {
  double max_discrepancy = 0.0;
  std::uint64_t configs = 0;
  bool pass = false;
};

/// Compares gradient() against tuple enumeration on every binary
/// configuration; requires n <= 8 and every m <= 4.
GradientVerification verify_gradient_enumeration(const ModelSpec& spec);

struct FixedPointCheck {
  bool ambiguous = false;
  std::size_t root_count = 0;
  std::optional<double> root;
  /// |E[X] - x 1_n|_1 / n.
  std::optional<double> distance;
};

/// Diagnostic comparison of the exact mean with the constant mean-field
/// solution; no pass/fail.
FixedPointCheck empirical_fixed_point_check(const ModelSpec& spec);

}  // namespace vwergm
