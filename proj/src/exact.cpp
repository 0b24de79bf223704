#include "vwergm/exact.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "vwergm/error.hpp"
#include "vwergm/fixedpoint.hpp"
#include "vwergm/rng.hpp"

namespace vwergm {

namespace {

constexpr int kLowBits = 16;

struct ChunkLayout {
  int low_bits;
  std::uint64_t chunks;
};

ChunkLayout layout_for(int n) {
  const int low = std::min(n, kLowBits);
  return {low, std::uint64_t{1} << (n - low)};
}

double direct_f(const ModelSpec& spec, std::uint64_t mask) {
  return hamiltonian(spec, BinaryConfig::from_mask(spec.n(), mask).to_weights());
}

// Visits every configuration of one chunk in Gray-code order (or its
// reverse), updating f by the half-difference identity
// f(X with bit b flipped) = f(X) +/- 2 d_b f(X).
template <class Visit>
void visit_chunk(const ModelSpec& spec, const ChunkLayout& lay, std::uint64_t chunk, bool reverse,
                 bool cross_check, double& cross_err, const Visit& visit) {
  const std::uint64_t count = std::uint64_t{1} << lay.low_bits;
  const std::uint64_t high = chunk << lay.low_bits;
  auto gray = [](std::uint64_t t) { return t ^ (t >> 1); };

  std::uint64_t t = reverse ? count - 1 : 0;
  std::uint64_t mask = high | gray(t);
  double f = direct_f(spec, mask);
  int ones = std::popcount(mask);
  for (std::uint64_t step = 0;; ++step) {
    if (cross_check) cross_err = std::max(cross_err, std::abs(f - direct_f(spec, mask)));
    visit(mask, f);
    if (step + 1 == count) break;
    const std::uint64_t next_t = reverse ? t - 1 : t + 1;
    const std::uint64_t flip = gray(t) ^ gray(next_t);
    const int bit = std::countr_zero(flip);
    const int own = static_cast<int>((mask >> bit) & 1U);
    const double d = binary_derivative(spec, ones, own);
    if (own) {
      f -= 2.0 * d;
      --ones;
    } else {
      f += 2.0 * d;
      ++ones;
    }
    mask ^= flip;
    t = next_t;
  }
}

template <class Work>
void for_each_chunk(std::uint64_t chunks, int threads, const Work& work) {
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::uint64_t>(chunks, 256))));
  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) work(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) work(c);
    });
  for (auto& th : pool) th.join();
}

struct ChunkMoments {
  double z = 0.0;
  std::vector<double> first;
  std::vector<double> second;  // upper triangle incl. diagonal, row-major n x n
  double max_f = -std::numeric_limits<double>::infinity();
  double cross_err = 0.0;
};

}  // namespace

ExactSummary exact_summary(const ModelSpec& spec, const EnumerationOptions& opts) {
  const int n = spec.n();
  if (n > kMaxEnumerateN)
    throw CapacityError("exact enumeration supports n <= " + std::to_string(kMaxEnumerateN) + " (got n = " +
                        std::to_string(n) + "); use the Glauber sampler for larger models");
  const auto lay = layout_for(n);
  std::vector<ChunkMoments> parts(lay.chunks);

  // pass 1: maximum of f for a stable log-sum-exp
  for_each_chunk(lay.chunks, opts.threads, [&](std::uint64_t c) {
    auto& part = parts[c];
    visit_chunk(spec, lay, c, opts.reverse, opts.cross_check, part.cross_err,
                [&](std::uint64_t, double f) { part.max_f = std::max(part.max_f, f); });
  });
  double fmax = -std::numeric_limits<double>::infinity();
  for (const auto& p : parts) fmax = std::max(fmax, p.max_f);

  // pass 2: weighted moments relative to exp(fmax)
  const std::size_t nn = static_cast<std::size_t>(n);
  for_each_chunk(lay.chunks, opts.threads, [&](std::uint64_t c) {
    auto& part = parts[c];
    part.first.assign(nn, 0.0);
    part.second.assign(nn * nn, 0.0);
    double unused = 0.0;
    visit_chunk(spec, lay, c, opts.reverse, false, unused, [&](std::uint64_t mask, double f) {
      const double w = std::exp(f - fmax);
      part.z += w;
      for (std::uint64_t a = mask; a; a &= a - 1) {
        const int i = std::countr_zero(a);
        part.first[static_cast<std::size_t>(i)] += w;
        for (std::uint64_t b = a; b; b &= b - 1)
          part.second[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(std::countr_zero(b))] += w;
      }
    });
  });

  ExactSummary s;
  s.n = n;
  s.mean.assign(nn, 0.0);
  s.pair_corr.assign(nn * nn, 0.0);
  double z = 0.0;
  for (std::uint64_t k = 0; k < lay.chunks; ++k) {
    const auto& part = parts[opts.reverse ? lay.chunks - 1 - k : k];
    z += part.z;
    for (std::size_t i = 0; i < nn; ++i) s.mean[i] += part.first[i];
    for (std::size_t i = 0; i < nn * nn; ++i) s.pair_corr[i] += part.second[i];
    s.cross_check_error = std::max(s.cross_check_error, part.cross_err);
  }
  for (auto& v : s.mean) v /= z;
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i; j < nn; ++j) {
      const double v = s.pair_corr[i * nn + j] / z;
      s.pair_corr[i * nn + j] = v;
      s.pair_corr[j * nn + i] = v;
    }
  s.log_partition = fmax + std::log(z);
  s.psi_n = (s.log_partition + n * std::log1p(-spec.p())) / n;
  return s;
}

std::vector<BinaryConfig> exact_sample(const ModelSpec& spec, int count, std::uint64_t seed) {
  const int n = spec.n();
  if (n > kMaxExactSampleN)
    throw CapacityError("exact sampling supports n <= " + std::to_string(kMaxExactSampleN) + " (got n = " +
                        std::to_string(n) + "); use the Glauber sampler for larger models");
  if (count < 0) throw InvalidParameter("exact_sample: negative sample count");

  const auto lay = layout_for(n);
  std::vector<double> f(std::size_t{1} << n);
  double unused = 0.0;
  for (std::uint64_t c = 0; c < lay.chunks; ++c)
    visit_chunk(spec, lay, c, false, false, unused, [&](std::uint64_t mask, double v) { f[mask] = v; });
  const double fmax = *std::max_element(f.begin(), f.end());
  std::vector<double> cdf(f.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += std::exp(f[i] - fmax);
    cdf[i] = acc;
  }

  Rng rng(seed);
  std::vector<BinaryConfig> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    out.push_back(BinaryConfig::from_mask(n, idx));
  }
  return out;
}

namespace {

double tuple_sum(std::span<const double> x, std::vector<char>& used, int remaining) {
  if (remaining == 0) return 1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (used[i] || x[i] == 0.0) continue;
    used[i] = 1;
    s += x[i] * tuple_sum(x, used, remaining - 1);
    used[i] = 0;
  }
  return s;
}

}  // namespace

double enumerate_clique_entry(const WeightVector& x, int j, int m) {
  if (m < 1) throw InvalidParameter("enumerate_clique_entry: m must be >= 1");
  std::vector<char> used(static_cast<std::size_t>(x.size()), 0);
  used[static_cast<std::size_t>(j)] = 1;
  return tuple_sum(x.values(), used, m - 1);
}

double enumerate_clique_total(const WeightVector& x, int m) {
  std::vector<char> used(static_cast<std::size_t>(x.size()), 0);
  return tuple_sum(x.values(), used, m);
}

GradientVerification verify_gradient_enumeration(const ModelSpec& spec) {
  const int n = spec.n();
  if (n > 8) throw InvalidParameter("verify_gradient_enumeration: requires n <= 8");
  for (const auto& t : spec.terms())
    if (t.m > 4) throw InvalidParameter("verify_gradient_enumeration: requires every m <= 4");

  GradientVerification v;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto x = BinaryConfig::from_mask(n, mask).to_weights();
    const auto g = gradient(spec, x);
    for (int j = 0; j < n; ++j) {
      double direct = spec.tilt();
      for (const auto& t : spec.terms())
        direct += t.m * t.alpha / (2.0 * std::pow(static_cast<double>(n), t.m - 1)) * enumerate_clique_entry(x, j, t.m);
      v.max_discrepancy = std::max(v.max_discrepancy, std::abs(direct - g[static_cast<std::size_t>(j)]));
    }
    ++v.configs;
  }
  v.pass = v.max_discrepancy <= 1e-9;
  return v;
}

FixedPointCheck empirical_fixed_point_check(const ModelSpec& spec) {
  if (spec.n() > kMaxEnumerateN)
    throw CapacityError("empirical_fixed_point_check: requires n <= " + std::to_string(kMaxEnumerateN));
  FixedPointCheck chk;
  const auto roots = solve_scalar(spec);
  chk.root_count = roots.roots.size();
  if (!roots.unique()) {
    chk.ambiguous = true;
    return chk;
  }
  chk.root = roots.roots.front();
  const auto s = exact_summary(spec);
  double d = 0.0;
  for (double m : s.mean) d += std::abs(m - *chk.root);
  chk.distance = d / spec.n();
  return chk;
}

}  // namespace vwergm
