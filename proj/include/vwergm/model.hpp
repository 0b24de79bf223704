#pragma once

// Vertex-weighted clique Hamiltonians:
//
//   f(X) = sum_q alpha_q n^(1-m_q) T_{m_q}(X) + gamma |X|_1  [+ pair-sum term]
//
// where T_m(X) sums X_{i1}...X_{im} over ordered tuples of distinct indices
// and gamma = log(p / (1 - p)). Per-vertex clique counts C^m are computed by
// the recursion C_j^m = sum_i X_i C_i^(m-1) - (m-1) X_j C_j^(m-1), C^1 = 1.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace vwergm {

struct CliqueTerm {
  int m = 2;
  double alpha = 0.0;
};

class ModelSpec {
 public:
  ModelSpec(int n, double p, std::vector<CliqueTerm> terms = {},
            std::optional<double> pair_sum_alpha = std::nullopt);

  int n() const { return n_; }
  double p() const { return p_; }
  double gamma() const { return gamma_; }
  const std::vector<CliqueTerm>& terms() const { return terms_; }
  std::optional<double> pair_sum_alpha() const { return pair_sum_alpha_; }

  /// Constant part of every discrete derivative: gamma/2 plus the pair-sum
  /// contribution alpha (1 - 1/n).
  double tilt() const;

  bool weights_nonnegative() const;

  ModelSpec with_n(int n) const;
  ModelSpec with_p(double p) const;

 private:
  int n_;
  double p_;
  double gamma_;
  std::vector<CliqueTerm> terms_;
  std::optional<double> pair_sum_alpha_;
};

/// A point of the continuous cube [0,1]^n.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> values);

  static WeightVector constant(int n, double x);
  static WeightVector zeros(int n) { return constant(n, 0.0); }
  static WeightVector ones(int n) { return constant(n, 1.0); }

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vec() const { return values_; }

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> values_;
};

/// A point of the discrete cube {0,1}^n.
class BinaryConfig {
 public:
  BinaryConfig() = default;
  explicit BinaryConfig(std::vector<std::uint8_t> bits);

  static BinaryConfig from_mask(int n, std::uint64_t mask);

  int size() const { return static_cast<int>(bits_.size()); }
  std::uint8_t operator[](int i) const { return bits_[static_cast<std::size_t>(i)]; }
  void set(int i, bool value) { bits_[static_cast<std::size_t>(i)] = value ? 1 : 0; }
  int ones() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  WeightVector to_weights() const;

  bool operator==(const BinaryConfig&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct CliqueVector {
  int m = 1;
  std::vector<double> values;
};

struct ModelConstants {
  double c_alpha = 2.0;
  double j_alpha = 0.0;
  double lip_bound = 0.0;
  double grad_complexity_bound = 0.0;
};

/// (x)_k = x (x-1) ... (x-k+1); (x)_0 = 1.
double falling_factorial(double x, int k);

CliqueVector clique_vector(const WeightVector& x, int m);

/// Sum over ordered distinct m-tuples of the product of entries.
double total_clique_sum(const WeightVector& x, int m);

double hamiltonian(const ModelSpec& spec, const WeightVector& x);

/// Half-difference of f in coordinate j (0-based).
double discrete_derivative(const ModelSpec& spec, const WeightVector& x, int j);

std::vector<double> gradient(const ModelSpec& spec, const WeightVector& x);

/// Discrete derivative at a binary configuration with `ones` set entries,
/// where `own` is the value at the coordinate itself. Uses the closed form
/// C_j^m = (ones - own)_(m-1).
double binary_derivative(const ModelSpec& spec, int ones, int own);

ModelConstants constants(const ModelSpec& spec);

}  // namespace vwergm
