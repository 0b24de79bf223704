#include "vwergm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "vwergm/error.hpp"
#include "vwergm/fixedpoint.hpp"

namespace vwergm {

namespace {

constexpr std::uint64_t kDriftCheckSweeps = 10000;
constexpr double kDriftTol = 1e-6;

double mean_of(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += v[i];
  return hi > lo ? s / static_cast<double>(hi - lo) : 0.0;
}

// Batch-means standard error of the mean of v[lo, hi).
double batch_se(const std::vector<double>& v, std::size_t lo, std::size_t hi, int batches) {
  const std::size_t len = hi - lo;
  const std::size_t b = std::min<std::size_t>(static_cast<std::size_t>(std::max(2, batches)), len);
  if (b < 2) return 0.0;
  const std::size_t size = len / b;
  std::vector<double> means(b);
  for (std::size_t k = 0; k < b; ++k) means[k] = mean_of(v, lo + k * size, lo + (k + 1) * size);
  const double mu = mean_of(means, 0, b);
  double var = 0.0;
  for (double m : means) var += (m - mu) * (m - mu);
  var /= static_cast<double>(b - 1);
  return std::sqrt(var / static_cast<double>(b));
}

void record_sweep_end(ChainState& s) {
  ++s.sweep_count;
  const double w = 1.0 / static_cast<double>(s.sweep_count);
  for (int i = 0; i < s.config.size(); ++i) {
    auto& m = s.running_mean[static_cast<std::size_t>(i)];
    m += (s.config[i] - m) * w;
  }
}

}  // namespace

ChainState initial_state(const ModelSpec& spec, std::uint64_t seed, ChainInit init) {
  ChainState s;
  s.rng = Rng(seed);
  s.rng_seed = seed;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(spec.n()), 0);
  if (init == ChainInit::ones) std::fill(bits.begin(), bits.end(), 1);
  if (init == ChainInit::random)
    for (auto& b : bits) b = s.rng.uniform() < spec.p() ? 1 : 0;
  s.config = BinaryConfig(std::move(bits));
  s.ones = s.config.ones();
  s.running_mean.assign(static_cast<std::size_t>(spec.n()), 0.0);
  return s;
}

double conditional_probability(const ModelSpec& spec, const BinaryConfig& config, int j) {
  if (j < 0 || j >= config.size()) throw InvalidParameter("conditional_probability: coordinate out of range");
  return half_tanh_shift(binary_derivative(spec, config.ones(), config[j]));
}

GlauberKernel::GlauberKernel(const ModelSpec& spec) : spec_(spec) {
  const int n = spec.n();
  derivative_.resize(static_cast<std::size_t>(n));
  prob_one_.resize(static_cast<std::size_t>(n));
  for (int others = 0; others < n; ++others) {
    derivative_[static_cast<std::size_t>(others)] = binary_derivative(spec, others, 0);
    prob_one_[static_cast<std::size_t>(others)] = half_tanh_shift(derivative_[static_cast<std::size_t>(others)]);
  }
}

void GlauberKernel::update(ChainState& s) const {
  const int n = spec_.n();
  const int j = static_cast<int>(s.rng.below(static_cast<std::uint64_t>(n)));
  const int own = s.config[j];
  const int others = s.ones - own;
  const bool one = s.rng.uniform() < prob_one_[static_cast<std::size_t>(others)];
  s.config.set(j, one);
  s.ones = others + (one ? 1 : 0);
  ++s.update_count;
  if (s.update_count % static_cast<std::uint64_t>(n) == 0) record_sweep_end(s);
}

void GlauberKernel::sweep(ChainState& s) const {
  for (int i = 0; i < spec_.n(); ++i) update(s);
}

double GlauberKernel::drift(const BinaryConfig& config) const {
  const auto g = gradient(spec_, config.to_weights());
  const int ones = config.ones();
  double worst = 0.0;
  for (int j = 0; j < config.size(); ++j) {
    const double table = derivative_[static_cast<std::size_t>(ones - config[j])];
    worst = std::max(worst, std::abs(table - g[static_cast<std::size_t>(j)]));
  }
  return worst;
}

ChainState glauber_step(const ModelSpec& spec, ChainState state) {
  const int n = spec.n();
  const int j = static_cast<int>(state.rng.below(static_cast<std::uint64_t>(n)));
  const int own = state.config[j];
  const double p1 = half_tanh_shift(binary_derivative(spec, state.ones, own));
  const bool one = state.rng.uniform() < p1;
  state.config.set(j, one);
  state.ones = state.ones - own + (one ? 1 : 0);
  ++state.update_count;
  if (state.update_count % static_cast<std::uint64_t>(n) == 0) record_sweep_end(state);
  return state;
}

ChainResult run_chain(const ModelSpec& spec, const ChainOptions& opts) {
  if (opts.samples == 0 || opts.thin == 0) throw InvalidParameter("run_chain: samples and thin must be positive");
  if (opts.init == ChainInit::dispersed) throw InvalidParameter("run_chain: dispersed starts apply to run_chains");
  const GlauberKernel kernel(spec);
  const int n = spec.n();
  const auto nn = static_cast<std::size_t>(n);

  ChainResult res;
  ChainState s = initial_state(spec, opts.seed, opts.init);
  auto& d = res.diagnostics;

  auto checked_sweep = [&] {
    kernel.sweep(s);
    if (s.sweep_count % kDriftCheckSweeps == 0) {
      const double drift = kernel.drift(s.config);
      d.max_drift = std::max(d.max_drift, drift);
      if (drift > kDriftTol) throw std::logic_error("glauber: derivative table drifted from the clique recursion");
      s.ones = s.config.ones();
    }
  };

  for (std::uint64_t t = 0; t < opts.burn_in; ++t) checked_sweep();

  const int batches = std::max(2, opts.batches);
  const std::uint64_t batch_len = std::max<std::uint64_t>(1, opts.samples / static_cast<std::uint64_t>(batches));
  std::vector<double> sums(nn, 0.0);
  std::vector<std::vector<double>> batch_sums;
  std::vector<double> current(nn, 0.0);
  std::uint64_t in_batch = 0;
  d.density_trace.reserve(opts.samples);
  if (opts.keep_samples) res.samples.reserve(opts.samples);

  for (std::uint64_t k = 0; k < opts.samples; ++k) {
    for (std::uint64_t t = 0; t < opts.thin; ++t) checked_sweep();
    if (opts.keep_samples) res.samples.push_back(s.config);
    for (std::size_t i = 0; i < nn; ++i) {
      sums[i] += s.config[static_cast<int>(i)];
      current[i] += s.config[static_cast<int>(i)];
    }
    d.density_trace.push_back(static_cast<double>(s.ones) / n);
    if (++in_batch == batch_len && batch_sums.size() + 1 < static_cast<std::size_t>(batches) + 1) {
      for (auto& v : current) v /= static_cast<double>(batch_len);
      batch_sums.push_back(current);
      std::fill(current.begin(), current.end(), 0.0);
      in_batch = 0;
    }
  }

  d.updates = s.update_count;
  d.sweeps = s.sweep_count;
  d.mean.resize(nn);
  d.std_error.assign(nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) d.mean[i] = sums[i] / static_cast<double>(opts.samples);
  const std::size_t b = batch_sums.size();
  if (b >= 2)
    for (std::size_t i = 0; i < nn; ++i) {
      double mu = 0.0;
      for (const auto& bs : batch_sums) mu += bs[i];
      mu /= static_cast<double>(b);
      double var = 0.0;
      for (const auto& bs : batch_sums) var += (bs[i] - mu) * (bs[i] - mu);
      var /= static_cast<double>(b - 1);
      d.std_error[i] = std::sqrt(var / static_cast<double>(b));
    }

  const auto& tr = d.density_trace;
  d.density_mean = mean_of(tr, 0, tr.size());
  double var0 = 0.0;
  for (double v : tr) var0 += (v - d.density_mean) * (v - d.density_mean);
  for (int lag : {1, 10, 100}) {
    if (static_cast<std::size_t>(lag) >= tr.size()) break;
    double c = 0.0;
    for (std::size_t i = 0; i + static_cast<std::size_t>(lag) < tr.size(); ++i)
      c += (tr[i] - d.density_mean) * (tr[i + static_cast<std::size_t>(lag)] - d.density_mean);
    d.autocorrelation.emplace_back(lag, var0 > 0 ? c / var0 : 0.0);
  }
  const std::size_t half = tr.size() / 2;
  if (half >= 2) {
    const double m1 = mean_of(tr, 0, half), m2 = mean_of(tr, half, 2 * half);
    const double se1 = batch_se(tr, 0, half, batches / 2), se2 = batch_se(tr, half, 2 * half, batches / 2);
    const double se = std::sqrt(se1 * se1 + se2 * se2);
    d.split_discrepancy = se > 0 ? std::abs(m1 - m2) / se : (m1 == m2 ? 0.0 : std::numeric_limits<double>::infinity());
  }
  res.final_state = std::move(s);
  return res;
}

MultiChainResult run_chains(const ModelSpec& spec, const ChainOptions& opts, int chains, int threads) {
  if (chains < 1) throw InvalidParameter("run_chains: need at least one chain");
  MultiChainResult out;
  out.chains.resize(static_cast<std::size_t>(chains));
  auto run_one = [&](int c) {
    ChainOptions o = opts;
    o.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(c));
    if (opts.init == ChainInit::dispersed) o.init = c % 2 == 0 ? ChainInit::zeros : ChainInit::ones;
    out.chains[static_cast<std::size_t>(c)] = run_chain(spec, o);
  };
  const int workers = std::max(1, std::min(threads, chains));
  if (workers == 1) {
    for (int c = 0; c < chains; ++c) run_one(c);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int c = w; c < chains; c += workers) run_one(c);
      });
    for (auto& t : pool) t.join();
  }

  // split-chain R-hat over half-chains of the density trace
  std::vector<double> seq_means, seq_vars;
  std::size_t len = std::numeric_limits<std::size_t>::max();
  for (const auto& ch : out.chains) len = std::min(len, ch.diagnostics.density_trace.size() / 2);
  if (len >= 2) {
    for (const auto& ch : out.chains) {
      const auto& tr = ch.diagnostics.density_trace;
      for (std::size_t start : {std::size_t{0}, len}) {
        const double mu = mean_of(tr, start, start + len);
        double var = 0.0;
        for (std::size_t i = start; i < start + len; ++i) var += (tr[i] - mu) * (tr[i] - mu);
        seq_means.push_back(mu);
        seq_vars.push_back(var / static_cast<double>(len - 1));
      }
    }
    const double w = mean_of(seq_vars, 0, seq_vars.size());
    const double grand = mean_of(seq_means, 0, seq_means.size());
    double between = 0.0;
    for (double m : seq_means) between += (m - grand) * (m - grand);
    between /= static_cast<double>(seq_means.size() - 1);  // = B / len
    const double l = static_cast<double>(len);
    const double var_plus = (l - 1.0) / l * w + between;
    if (w > 0)
      out.split_rhat = std::sqrt(var_plus / w);
    else
      out.split_rhat = between > 0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  out.slow_mixing = out.split_rhat > 1.1;
  return out;
}

ResidualHistogram residual_distribution(const ModelSpec& spec, const std::vector<BinaryConfig>& samples, int bins) {
  if (samples.empty()) throw InvalidParameter("residual_distribution: no samples");
  if (bins < 1) throw InvalidParameter("residual_distribution: bins must be positive");
  ResidualHistogram h;
  const double n = spec.n();
  h.lo = 0.0;
  h.hi = n;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  h.threshold = membership_threshold(spec);
  std::uint64_t below = 0;
  double s1 = 0.0, s2 = 0.0;
  for (const auto& cfg : samples) {
    const double r = residual(spec, cfg.to_weights());
    h.residuals.push_back(r);
    auto bin = static_cast<std::size_t>(std::floor(r / n * bins));
    h.counts[std::min(bin, h.counts.size() - 1)]++;
    if (r <= h.threshold) ++below;
    s1 += r / n;
    s2 += (r / n) * (r / n);
  }
  const double cnt = static_cast<double>(samples.size());
  h.fraction_below_threshold = static_cast<double>(below) / cnt;
  h.mean_normalized = s1 / cnt;
  h.stddev_normalized = std::sqrt(std::max(0.0, s2 / cnt - h.mean_normalized * h.mean_normalized));
  return h;
}

}  // namespace vwergm
