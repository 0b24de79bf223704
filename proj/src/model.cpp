#include "vwergm/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "vwergm/error.hpp"

namespace vwergm {

ModelSpec::ModelSpec(int n, double p, std::vector<CliqueTerm> terms,
                     std::optional<double> pair_sum_alpha)
    : n_(n), p_(p), terms_(std::move(terms)), pair_sum_alpha_(pair_sum_alpha) {
  if (n_ < 1) throw InvalidParameter("model: n must be >= 1, got " + std::to_string(n_));
  if (!(p_ > 0.0 && p_ < 1.0))
    throw InvalidParameter("model: p must lie in the open interval (0,1), got " +
                           std::to_string(p_));
  std::set<int> seen;
  for (const auto& t : terms_) {
    if (t.m < 2) throw InvalidParameter("model: clique size m must be >= 2, got " + std::to_string(t.m));
    if (!std::isfinite(t.alpha)) throw InvalidParameter("model: clique weight must be finite");
    if (!seen.insert(t.m).second)
      throw InvalidParameter("model: clique sizes must be distinct (m = " + std::to_string(t.m) +
                             " repeated)");
  }
  if (pair_sum_alpha_ && !std::isfinite(*pair_sum_alpha_))
    throw InvalidParameter("model: pair-sum weight must be finite");
  gamma_ = std::log(p_ / (1.0 - p_));
  if (!std::isfinite(gamma_)) throw InvalidParameter("model: log-odds of p is not finite");
}

double ModelSpec::tilt() const {
  double t = 0.5 * gamma_;
  if (pair_sum_alpha_) t += *pair_sum_alpha_ * (1.0 - 1.0 / n_);
  return t;
}

bool ModelSpec::weights_nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const CliqueTerm& t) { return t.alpha >= 0.0; });
}

ModelSpec ModelSpec::with_n(int n) const { return ModelSpec(n, p_, terms_, pair_sum_alpha_); }
ModelSpec ModelSpec::with_p(double p) const { return ModelSpec(n_, p, terms_, pair_sum_alpha_); }

WeightVector::WeightVector(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0))
      throw InvalidParameter("weight vector: entry " + std::to_string(i) + " = " +
                             std::to_string(v) + " outside [0,1]");
  }
}

WeightVector WeightVector::constant(int n, double x) {
  if (n < 0) throw InvalidParameter("weight vector: negative size");
  return WeightVector(std::vector<double>(static_cast<std::size_t>(n), x));
}

BinaryConfig::BinaryConfig(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] > 1)
      throw InvalidParameter("binary config: entry " + std::to_string(i) + " is not 0 or 1");
}

BinaryConfig BinaryConfig::from_mask(int n, std::uint64_t mask) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
  return BinaryConfig(std::move(bits));
}

int BinaryConfig::ones() const { return std::accumulate(bits_.begin(), bits_.end(), 0); }

WeightVector BinaryConfig::to_weights() const {
  return WeightVector(std::vector<double>(bits_.begin(), bits_.end()));
}

double falling_factorial(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (x - i);
  return r;
}

CliqueVector clique_vector(const WeightVector& x, int m) {
  if (m < 1) throw InvalidParameter("clique_vector: m must be >= 1, got " + std::to_string(m));
  const auto xs = x.values();
  std::vector<double> c(xs.size(), 1.0);
  for (int level = 2; level <= m; ++level) {
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += xs[i] * c[i];
    const double k = level - 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      // nonnegative in exact arithmetic; clamp rounding residue
      c[j] = std::max(0.0, s - k * xs[j] * c[j]);
    }
  }
  return {m, std::move(c)};
}

double total_clique_sum(const WeightVector& x, int m) {
  if (m < 2) throw InvalidParameter("total_clique_sum: m must be >= 2, got " + std::to_string(m));
  const auto c = clique_vector(x, m);
  const auto xs = x.values();
  double t = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) t += xs[j] * c.values[j];
  return t;
}

namespace {

void check_dims(const ModelSpec& spec, const WeightVector& x, const char* op) {
  if (x.size() != spec.n())
    throw InvalidParameter(std::string(op) + ": vector has " + std::to_string(x.size()) +
                           " entries but the model has n = " + std::to_string(spec.n()));
}

double l1(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += std::abs(e);
  return s;
}

}  // namespace

double hamiltonian(const ModelSpec& spec, const WeightVector& x) {
  check_dims(spec, x, "hamiltonian");
  const double n = spec.n();
  const double mass = l1(x.values());
  double f = spec.gamma() * mass;
  for (const auto& t : spec.terms())
    f += t.alpha * std::pow(n, 1 - t.m) * total_clique_sum(x, t.m);
  if (auto a = spec.pair_sum_alpha()) f += 2.0 * *a * (1.0 - 1.0 / n) * mass;
  return f;
}

std::vector<double> gradient(const ModelSpec& spec, const WeightVector& x) {
  check_dims(spec, x, "gradient");
  const double n = spec.n();
  std::vector<double> g(static_cast<std::size_t>(spec.n()), spec.tilt());
  for (const auto& t : spec.terms()) {
    const double coef = t.m * t.alpha / (2.0 * std::pow(n, t.m - 1));
    const auto c = clique_vector(x, t.m);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += coef * c.values[j];
  }
  return g;
}

double discrete_derivative(const ModelSpec& spec, const WeightVector& x, int j) {
  check_dims(spec, x, "discrete_derivative");
  if (j < 0 || j >= spec.n())
    throw InvalidParameter("discrete_derivative: coordinate " + std::to_string(j) +
                           " out of range [0," + std::to_string(spec.n()) + ")");
  const double n = spec.n();
  double d = spec.tilt();
  for (const auto& t : spec.terms()) {
    const auto c = clique_vector(x, t.m);
    d += t.m * t.alpha / (2.0 * std::pow(n, t.m - 1)) * c.values[static_cast<std::size_t>(j)];
  }
  return d;
}

double binary_derivative(const ModelSpec& spec, int ones, int own) {
  const double n = spec.n();
  double d = spec.tilt();
  for (const auto& t : spec.terms())
    d += t.m * t.alpha / (2.0 * std::pow(n, t.m - 1)) * falling_factorial(ones - own, t.m - 1);
  return d;
}

ModelConstants constants(const ModelSpec& spec) {
  double weighted = 0.0;  // sum |alpha_q| m_q (m_q - 1)
  double linear = 0.0;    // sum |alpha_q| m_q
  for (const auto& t : spec.terms()) {
    weighted += std::abs(t.alpha) * t.m * (t.m - 1);
    linear += std::abs(t.alpha) * t.m;
  }
  const double n = spec.n();
  const double pair = spec.pair_sum_alpha() ? std::abs(*spec.pair_sum_alpha()) * (1.0 - 1.0 / n) : 0.0;

  ModelConstants c;
  c.j_alpha = 0.25 * weighted;
  c.c_alpha = std::max(2.0, 0.5 * std::abs(spec.gamma()) + pair + 0.5 * weighted);
  c.lip_bound = 0.5 * std::abs(spec.gamma()) + pair + 0.5 * linear;
  c.grad_complexity_bound = 0.5 * std::sqrt(n) * weighted;
  if (spec.pair_sum_alpha()) {
    const double shift = *spec.pair_sum_alpha() * (1.0 - 1.0 / n) + 0.5 * spec.gamma();
    c.grad_complexity_bound += std::abs(shift) * std::sqrt(2.0 * n / M_PI);
  }
  return c;
}

}  // namespace vwergm
