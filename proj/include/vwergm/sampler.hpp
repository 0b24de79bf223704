#pragma once

// Single-site heat-bath (Glauber) dynamics for P(X) proportional to exp(f(X))
// on {0,1}^n. The resampled coordinate is drawn from its exact conditional
// P(X_j = 1 | rest) = (1 + tanh(d_j f(X))) / 2.

#include <cstdint>
#include <string>
#include <vector>

#include "vwergm/model.hpp"
#include "vwergm/rng.hpp"

namespace vwergm {

enum class ChainInit { random, zeros, ones, dispersed };

struct ChainState {
  BinaryConfig config;
  std::uint64_t sweep_count = 0;
  std::uint64_t update_count = 0;
  std::uint64_t rng_seed = 0;
  /// Average of the configurations observed at the end of each sweep.
  std::vector<double> running_mean;
  int ones = 0;
  Rng rng{0};
};

ChainState initial_state(const ModelSpec& spec, std::uint64_t seed, ChainInit init = ChainInit::random);

/// P(X_j = 1 | all other coordinates).
double conditional_probability(const ModelSpec& spec, const BinaryConfig& config, int j);

/// One heat-bath update of a uniformly chosen coordinate.
ChainState glauber_step(const ModelSpec& spec, ChainState state);

/// Precomputed conditionals indexed by the number of other set coordinates;
/// binary configurations make every discrete derivative a function of that
/// count alone.
class GlauberKernel {
 public:
  explicit GlauberKernel(const ModelSpec& spec);

  void update(ChainState& s) const;
  void sweep(ChainState& s) const;
  /// Compares the table against the clique-vector gradient at `config`;
  /// returns the largest absolute deviation of the derivatives.
  double drift(const BinaryConfig& config) const;

  const ModelSpec& spec() const { return spec_; }

 private:
  ModelSpec spec_;
  std::vector<double> derivative_;  // by count of other ones
  std::vector<double> prob_one_;
};

struct ChainOptions {
  std::uint64_t seed = 1;
  std::uint64_t burn_in = 1000;
  std::uint64_t samples = 1000;
  std::uint64_t thin = 1;
  ChainInit init = ChainInit::random;
  bool keep_samples = true;
  int batches = 50;
};

struct ChainDiagnostics {
  std::string rng_algorithm{Rng::kAlgorithm};
  std::uint64_t updates = 0;
  std::uint64_t sweeps = 0;
  std::vector<double> mean;       // per coordinate, over recorded samples
  std::vector<double> std_error;  // batch-means standard error per coordinate
  double density_mean = 0.0;      // mean of |X|_1 / n
  std::vector<std::pair<int, double>> autocorrelation;  // lag -> acf of |X|_1
  /// |first-half mean - second-half mean| of |X|_1/n in units of the
  /// combined batch-means standard error.
  double split_discrepancy = 0.0;
  double max_drift = 0.0;
  std::vector<double> density_trace;  // |X|_1 / n per recorded sample
};

struct ChainResult {
  std::vector<BinaryConfig> samples;
  ChainDiagnostics diagnostics;
  ChainState final_state;
};

ChainResult run_chain(const ModelSpec& spec, const ChainOptions& opts);

struct MultiChainResult {
  std::vector<ChainResult> chains;
  /// Split-chain potential scale reduction of |X|_1 / n.
  double split_rhat = 1.0;
  bool slow_mixing = false;
};

/// Runs `chains` independent chains with seeds derived from opts.seed.
/// ChainInit::dispersed starts even chains at all zeros and odd chains at all
/// ones.
MultiChainResult run_chains(const ModelSpec& spec, const ChainOptions& opts, int chains, int threads = 1);

struct ResidualHistogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;
  double threshold = 0.0;
  double fraction_below_threshold = 0.0;
  double mean_normalized = 0.0;    // mean of residual / n
  double stddev_normalized = 0.0;  // standard deviation of residual / n
  std::vector<double> residuals;
};

ResidualHistogram residual_distribution(const ModelSpec& spec, const std::vector<BinaryConfig>& samples,
                                        int bins = 20);

}  // namespace vwergm
