#include "vwergm/blockify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "vwergm/error.hpp"
#include "vwergm/fixedpoint.hpp"
#include "vwergm/rng.hpp"

namespace vwergm {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
}

double l1_distance(const WeightVector& x, const std::vector<double>& y) {
  double d = 0.0;
  for (int i = 0; i < x.size(); ++i) d += std::abs(x[i] - y[static_cast<std::size_t>(i)]);
  return d;
}

double lattice_dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  // exact while the partial sums stay below 2^53
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return static_cast<double>(s);
}

}  // namespace

int projection_dim(double delta) {
  check_delta(delta);
  const double d = delta;
  return static_cast<int>(std::ceil(2.0 * std::log(1.0 / d) / (d * d / 2.0 - d * d * d / 3.0)));
}

Eigen::VectorXd ProjectionMap::apply(const Eigen::VectorXd& v) const {
  if (v.size() != n) throw InvalidParameter("projection: dimension mismatch");
  return scale * (basis * v);
}

double ProjectionMap::orthonormality_error() const {
  const Eigen::MatrixXd g = basis * basis.transpose();
  return (g - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
}

ProjectionMap build_projection_k(int n, int k, std::uint64_t seed, double delta) {
  if (n < 1 || k < 1 || k > n) throw InvalidParameter("projection: need 1 <= k <= n");
  Rng rng(seed);
  Eigen::MatrixXd g(n, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < n; ++r) g(r, c) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);

  ProjectionMap p;
  p.n = n;
  p.k = k;
  p.delta = delta;
  p.seed = seed;
  p.basis = q.transpose();
  p.scale = std::sqrt(static_cast<double>(n) / k);
  return p;
}

ProjectionMap build_projection(int n, double delta, std::uint64_t seed) {
  const int k = projection_dim(delta);
  if (4 * k > n)
    throw CapacityError("projection dimension " + std::to_string(k) + " exceeds n/4 for n = " + std::to_string(n) +
                        "; use a larger n or a larger delta");
  return build_projection_k(n, k, seed, delta);
}

DeltaNet::DeltaNet(int k, double delta) : k_(k), delta_(delta) {
  check_delta(delta);
  if (k < 1) throw InvalidParameter("net dimension must be positive");
  spacing_ = delta / std::sqrt(static_cast<double>(k));
}

std::vector<std::int64_t> DeltaNet::snap(const Eigen::VectorXd& x) const {
  if (x.size() != k_) throw InvalidParameter("net: dimension mismatch");
  const double norm = x.norm();
  const double shrink = norm > kRadius ? kRadius / norm : 1.0;
  std::vector<std::int64_t> c(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i) c[static_cast<std::size_t>(i)] = std::llround(x[i] * shrink / spacing_);
  return c;
}

Eigen::VectorXd DeltaNet::point(const std::vector<std::int64_t>& coords) const {
  Eigen::VectorXd p(k_);
  for (int i = 0; i < k_; ++i) p[i] = static_cast<double>(coords[static_cast<std::size_t>(i)]) * spacing_;
  return p;
}

bool DeltaNet::contains(const std::vector<std::int64_t>& coords) const {
  if (static_cast<int>(coords.size()) != k_) return false;
  const double r = (kRadius + delta_ / 2.0) / spacing_;
  return lattice_dot(coords, coords) <= r * r * (1.0 + 1e-12);
}

double DeltaNet::log_size_estimate() const {
  // lattice points in a ball ~ volume of the ball inflated by half a cell diagonal
  const double k = k_;
  const double r = (kRadius + delta_) / spacing_;
  return (k / 2.0) * std::log(M_PI) - std::lgamma(k / 2.0 + 1.0) + k * std::log(r);
}

double DeltaNet::log_reference_bound() const { return (k_ + 1) * std::log1p(4.0 / delta_); }

std::vector<std::vector<std::int64_t>> DeltaNet::points(std::size_t max_points) const {
  if (log_size_estimate() > std::log(static_cast<double>(max_points)))
    throw CapacityError("delta-net too large to materialize (log size ~ " + std::to_string(log_size_estimate()) + ")");
  const double r = (kRadius + delta_ / 2.0) / spacing_;
  const double r2 = r * r * (1.0 + 1e-12);
  const auto bound = static_cast<std::int64_t>(std::floor(r));
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur(static_cast<std::size_t>(k_), 0);
  auto rec = [&](auto&& self, int dim, double used) -> void {
    if (dim == k_) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t v = -bound; v <= bound; ++v) {
      const double u = used + static_cast<double>(v * v);
      if (u > r2) continue;
      cur[static_cast<std::size_t>(dim)] = v;
      self(self, dim + 1, u);
    }
  };
  rec(rec, 0, 0.0);
  return out;
}

DeltaNet::CoverageReport DeltaNet::probe_coverage(std::uint64_t probes, std::uint64_t seed) const {
  Rng rng(seed);
  CoverageReport rep;
  rep.probes = probes;
  Eigen::VectorXd x(k_);
  for (std::uint64_t t = 0; t < probes; ++t) {
    for (int i = 0; i < k_; ++i) x[i] = rng.normal();
    const double radius = kRadius * std::pow(rng.uniform(), 1.0 / k_);
    const double norm = x.norm();
    if (norm > 0) x *= radius / norm;
    const auto c = snap(x);
    const double dist = (point(c) - x).norm();
    rep.max_distance = std::max(rep.max_distance, dist);
    if (dist > delta_ || !contains(c)) ++rep.failures;
  }
  return rep;
}

CompressionResult compress(const ModelSpec& spec, const WeightVector& x, double delta, std::uint64_t seed) {
  check_delta(delta);
  return compress_with(spec, x, build_projection(spec.n(), delta, seed));
}

CompressionResult compress_with(const ModelSpec& spec, const WeightVector& x, const ProjectionMap& proj) {
  const int n = spec.n();
  if (x.size() != n || proj.n != n) throw InvalidParameter("compress: dimension mismatch");
  const double delta = proj.delta > 0 ? proj.delta : 0.25;
  const DeltaNet net(proj.k, delta);
  const double nn = n;

  CompressionResult res;
  res.k = proj.k;
  res.delta = delta;
  res.seed = proj.seed;
  res.log_net_size = net.log_size_estimate();
  res.log_reference_net_bound = net.log_reference_bound();

  struct Term {
    double weight;  // m alpha c_q / 2
    std::vector<std::int64_t> u;
    Eigen::VectorXd g_ones;
    double scale_m;  // (m-1) * proj.scale
    double norm;     // |column of J - (m-1)I|
  };
  std::vector<Term> terms;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  for (const auto& t : spec.terms()) {
    const int m = t.m;
    const auto c = clique_vector(x, m - 1);
    Eigen::VectorXd u(n);
    const double norm_u = std::pow(nn, m - 2) * std::sqrt(nn);
    for (int i = 0; i < n; ++i) u[i] = x[i] * c.values[static_cast<std::size_t>(i)] / norm_u;
    const double un = u.norm();
    res.max_u_norm = std::max(res.max_u_norm, un);
    if (un > 1.0 + 1e-12) throw std::logic_error("compress: |u| exceeds 1");
    const double cq = std::sqrt(1.0 - 1.0 / nn + (2.0 - m) * (2.0 - m) / nn);
    terms.push_back({0.5 * m * t.alpha * cq, net.snap(proj.apply(u)), proj.apply(ones), (m - 1) * proj.scale,
                     std::sqrt(nn - 1.0 + (2.0 - m) * (2.0 - m))});
  }

  const double s2 = net.spacing() * net.spacing();
  std::map<std::vector<std::int64_t>, int> ids;
  std::vector<double> community_value;
  auto& b = res.block;
  b.values.resize(static_cast<std::size_t>(n));
  b.community_of.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<std::int64_t> key;
    std::vector<std::vector<std::int64_t>> snapped;
    for (const auto& t : terms) {
      // g(v_j) by linearity: v_j = (1 - (m-1) e_j) / |.|
      const Eigen::VectorXd gv = (t.g_ones - t.scale_m * proj.basis.col(j)) / t.norm;
      snapped.push_back(net.snap(gv));
      key.insert(key.end(), snapped.back().begin(), snapped.back().end());
    }
    auto [it, fresh] = ids.emplace(std::move(key), static_cast<int>(community_value.size()));
    if (fresh) {
      double xbar = spec.tilt();
      for (std::size_t q = 0; q < terms.size(); ++q) xbar += terms[q].weight * s2 * lattice_dot(terms[q].u, snapped[q]);
      community_value.push_back(half_tanh_shift(xbar));
    }
    b.community_of[static_cast<std::size_t>(j)] = it->second;
    b.values[static_cast<std::size_t>(j)] = community_value[static_cast<std::size_t>(it->second)];
  }
  b.community_count = static_cast<int>(community_value.size());
  res.log_community_bound = std::min(std::log(nn), static_cast<double>(terms.size()) * res.log_net_size);
  return res;
}

CompressionReport compression_report(const ModelSpec& spec, const WeightVector& x, const BlockVector& block,
                                     double delta) {
  check_delta(delta);
  if (static_cast<int>(block.values.size()) != x.size() || x.size() != spec.n())
    throw InvalidParameter("compression_report: dimension mismatch");
  const double n = spec.n();
  const double c = constants(spec).c_alpha;
  const double tail = 5000.0 * c * c * std::pow(n, 7.0 / 8.0);
  double weight = 0.0;
  for (const auto& t : spec.terms())
    weight += t.m * std::abs(t.alpha) * std::sqrt(1.0 - 1.0 / n + (2.0 - t.m) * (2.0 - t.m) / n);

  CompressionReport r;
  r.distance = l1_distance(x, block.values);
  r.theorem_bound = delta * n + tail;
  r.proof_bound = 11.5 * weight * delta * n + tail;
  r.theorem_bound_holds = r.distance <= r.theorem_bound;
  r.proof_bound_holds = r.distance <= r.proof_bound;
  r.theorem_bound_vacuous = r.theorem_bound >= n;
  r.proof_bound_vacuous = r.proof_bound >= n;
  r.residual = residual(spec, x);
  r.member = r.residual <= membership_threshold(spec);
  return r;
}

double mean_compression_distance(const ModelSpec& spec, const WeightVector& x, double delta,
                                 std::uint64_t base_seed, int count) {
  if (count < 1) throw InvalidParameter("mean_compression_distance: count must be positive");
  double s = 0.0;
  for (int i = 0; i < count; ++i) {
    const auto r = compress(spec, x, delta, derive_seed(base_seed, static_cast<std::uint64_t>(i)));
    s += l1_distance(x, r.block.values);
  }
  return s / count;
}

}  // namespace vwergm
