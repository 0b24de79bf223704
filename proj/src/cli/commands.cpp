#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "vwergm/blockify.hpp"
#include "vwergm/cli.hpp"
#include "vwergm/error.hpp"
#include "vwergm/exact.hpp"
#include "vwergm/fixedpoint.hpp"
#include "vwergm/io.hpp"
#include "vwergm/rng.hpp"
#include "vwergm/sampler.hpp"
#include "vwergm/triangle.hpp"

namespace vwergm::cli {

using nlohmann::json;

namespace {

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string suffix;
  std::string content;
};

struct CommandResult {
  std::vector<Output> outputs;
  json parameters = json::object();
  json seeds = json::object();
  std::vector<std::string> inputs;
  std::string rng_algorithm;
  std::string failure;  // set when the command ran but did not converge
};

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  int threads = 1;
};

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten_csv(std::ostream& os, const std::string& key, const json& v) {
  if (v.is_object()) {
    for (const auto& [k, sub] : v.items()) flatten_csv(os, key.empty() ? k : key + "." + k, sub);
    return;
  }
  if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten_csv(os, key + "[" + std::to_string(i) + "]", v[i]);
    return;
  }
  os << key;
  if (v.is_array())
    for (const auto& e : v) os << "," << cell(e);
  else
    os << "," << cell(v);
  os << "\n";
}

std::string render_doc(const json& doc, const std::string& format) {
  if (format == "csv") {
    std::ostringstream os;
    flatten_csv(os, "", doc);
    return os.str();
  }
  return doc.dump(2) + "\n";
}

std::string render_table(const std::vector<std::string>& columns, const std::vector<std::vector<json>>& rows,
                         const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    auto a = json::array();
    for (const auto& r : rows) {
      json o = json::object();
      for (std::size_t c = 0; c < columns.size() && c < r.size(); ++c) o[columns[c]] = r[c];
      a.push_back(o);
    }
    os << a.dump(2) << "\n";
    return os.str();
  }
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << (c < r.size() ? cell(r[c]) : "");
    os << "\n";
  }
  return os.str();
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json constants_json(const ModelConstants& c) {
  return {{"c_alpha", c.c_alpha},
          {"j_alpha", c.j_alpha},
          {"lip_bound", c.lip_bound},
          {"grad_complexity_bound", c.grad_complexity_bound}};
}

json bounds_json(const DistanceBounds& b) {
  json j = {{"c_alpha", b.c_alpha},
            {"j_alpha", b.j_alpha},
            {"d_alpha", opt_json(b.d_alpha)},
            {"weights_nonnegative", b.weights_nonnegative},
            {"unique_root", b.unique_root},
            {"root", opt_json(b.root)},
            {"small_weights", opt_json(b.small_weights)},
            {"asymptotic", opt_json(b.asymptotic)}};
  if (b.positive_weights)
    j["positive_weights"] = {{"value", b.positive_weights->value},
                             {"epsilon", b.positive_weights->epsilon},
                             {"epsilon_clamped", b.positive_weights->epsilon_clamped}};
  else
    j["positive_weights"] = nullptr;
  return j;
}

json spec_json(const ModelSpec& s) {
  auto terms = json::array();
  for (const auto& t : s.terms()) terms.push_back({{"m", t.m}, {"alpha", t.alpha}});
  return {{"n", s.n()}, {"p", s.p()}, {"terms", terms}, {"pair_sum_alpha", opt_json(s.pair_sum_alpha())}};
}

std::vector<double> parse_grid(const std::string& text, const std::string& what) {
  std::vector<double> out;
  auto num = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw InvalidParameter(what + ": cannot parse '" + t + "'");
    }
  };
  if (std::count(text.begin(), text.end(), ':') == 2) {
    const auto a = text.find(':'), b = text.find(':', a + 1);
    const double lo = num(text.substr(0, a)), hi = num(text.substr(a + 1, b - a - 1));
    const double cnt = num(text.substr(b + 1));
    if (cnt < 1 || cnt != std::floor(cnt)) throw InvalidParameter(what + ": count must be a positive integer");
    const int c = static_cast<int>(cnt);
    for (int i = 0; i < c; ++i) out.push_back(c == 1 ? lo : lo + (hi - lo) * i / (c - 1));
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(num(tok));
  if (out.empty()) throw InvalidParameter(what + ": empty grid");
  return out;
}

void run_parallel(int count, int threads, const std::function<void(int)>& body) {
  const int w = std::max(1, std::min(threads, count));
  if (w == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < w; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += w) body(i);
    });
  for (auto& th : pool) th.join();
}

WeightVector load_weights(const std::string& path, int n) {
  auto v = read_vector_file(path);
  if (static_cast<int>(v.size()) != n)
    throw ParseError(path + ": vector has " + std::to_string(v.size()) + " entries but the model has n = " +
                     std::to_string(n));
  try {
    return WeightVector(std::move(v));
  } catch (const InvalidParameter& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ---- commands

struct EvalArgs {
  std::string spec, x;
};
CommandResult cmd_eval(const EvalArgs& a, const Globals& g) {
  const auto spec = read_spec_file(a.spec);
  const auto x = load_weights(a.x, spec.n());
  json doc = {{"n", spec.n()},
              {"f", hamiltonian(spec, x)},
              {"gradient", gradient(spec, x)},
              {"residual", residual(spec, x)},
              {"membership_threshold", membership_threshold(spec)},
              {"member", is_member(spec, x)},
              {"constants", constants_json(constants(spec))}};
  CommandResult r;
  r.outputs.push_back({"", render_doc(doc, g.format.empty() ? "json" : g.format)});
  r.parameters = {{"spec", spec_json(spec)}};
  r.inputs = {a.spec, a.x};
  return r;
}

struct FixpointArgs {
  std::string spec, x0;
  std::optional<double> start;
  double tol = 1e-10;
  int max_iter = 100000;
  bool bounds = true;
};
CommandResult cmd_fixpoint(const FixpointArgs& a, const Globals& g) {
  const auto spec = read_spec_file(a.spec);
  CommandResult r;
  r.inputs = {a.spec};
  WeightVector x0;
  if (!a.x0.empty()) {
    x0 = load_weights(a.x0, spec.n());
    r.inputs.push_back(a.x0);
  } else {
    const double s = a.start.value_or(spec.p());
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidParameter("--start must lie in [0, 1]");
    x0 = WeightVector::constant(spec.n(), s);
  }
  const auto rep = iterate_phi(spec, x0, a.tol, a.max_iter);
  json doc = {{"solution", rep.solution.vec()},
              {"residual", rep.residual},
              {"iterations", rep.iterations},
              {"converged", rep.converged},
              {"contraction_estimate", rep.contraction_estimate}};
  doc["bounds"] = a.bounds ? bounds_json(distance_bounds(spec)) : json(nullptr);
  r.outputs.push_back({"", render_doc(doc, g.format.empty() ? "json" : g.format)});
  r.parameters = {{"spec", spec_json(spec)},
                  {"start", a.x0.empty() ? json(a.start.value_or(spec.p())) : json(nullptr)},
                  {"tol", a.tol},
                  {"max_iter", a.max_iter},
                  {"bounds", a.bounds}};
  if (!rep.converged)
    r.failure = "fixed-point iteration did not converge in " + std::to_string(a.max_iter) + " iterations";
  return r;
}

struct PhaseArgs {
  std::string spec, alpha_grid, p_grid;
  int resolution = 10000;
};
CommandResult cmd_phase(const PhaseArgs& a, const Globals& g) {
  const auto tmpl = read_spec_file(a.spec);
  const auto alphas = parse_grid(a.alpha_grid, "--alpha");
  const auto ps = parse_grid(a.p_grid, "--p");
  for (double p : ps)
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("--p values must lie in (0, 1)");
  const int cells = static_cast<int>(alphas.size() * ps.size());
  std::vector<ScalarRootSet> sets(static_cast<std::size_t>(cells));
  run_parallel(cells, g.threads, [&](int idx) {
    const double al = alphas[static_cast<std::size_t>(idx) / ps.size()];
    const double p = ps[static_cast<std::size_t>(idx) % ps.size()];
    std::vector<CliqueTerm> terms = tmpl.terms();
    for (auto& t : terms) t.alpha *= al;
    std::optional<double> pair = tmpl.pair_sum_alpha();
    if (pair) *pair *= al;
    sets[static_cast<std::size_t>(idx)] = solve_scalar(ModelSpec(tmpl.n(), p, terms, pair), a.resolution);
  });
  std::size_t kmax = 1;
  for (const auto& s : sets) kmax = std::max(kmax, s.roots.size());
  std::vector<std::string> cols = {"alpha", "p", "root_count"};
  for (std::size_t i = 1; i <= kmax; ++i) cols.push_back("root_" + std::to_string(i));
  std::vector<std::vector<json>> rows;
  for (int idx = 0; idx < cells; ++idx) {
    const auto& s = sets[static_cast<std::size_t>(idx)];
    std::vector<json> row = {alphas[static_cast<std::size_t>(idx) / ps.size()],
                             ps[static_cast<std::size_t>(idx) % ps.size()], s.roots.size()};
    for (std::size_t i = 0; i < kmax; ++i) row.push_back(i < s.roots.size() ? json(s.roots[i]) : json(nullptr));
    rows.push_back(std::move(row));
  }
  CommandResult r;
  r.outputs.push_back({"", render_table(cols, rows, g.format.empty() ? "csv" : g.format)});
  r.parameters = {{"template", spec_json(tmpl)}, {"alpha", alphas}, {"p", ps}, {"resolution", a.resolution}};
  r.inputs = {a.spec};
  return r;
}

struct SweepArgs {
  int n = 100;
  std::string alphas = "100,1000,10000";
  std::optional<double> floor_c;
};
CommandResult cmd_triangle_sweep(const SweepArgs& a, const Globals& g) {
  const auto alphas = parse_grid(a.alphas, "--alphas");
  const auto traj = triangle::sweep(alphas, a.n);
  CommandResult r;
  const std::string fmt = g.format.empty() ? "csv" : g.format;
  if (fmt == "csv") {
    std::ostringstream os;
    triangle::write_sweep_csv(os, traj, a.floor_c);
    r.outputs.push_back({"", os.str()});
  } else {
    auto arr = json::array();
    for (const auto& e : traj.entries) {
      json o = {{"alpha", e.alpha},
                {"a", e.point.a},
                {"b", e.point.b},
                {"residual_a", e.point.residual_a},
                {"residual_b", e.point.residual_b},
                {"a1", e.ends.a1},
                {"a2", e.ends.a2},
                {"a2_bound", opt_json(e.a2_bound)}};
      if (a.floor_c) o["a1_floor"] = std::exp(-*a.floor_c * e.alpha);
      arr.push_back(o);
    }
    r.outputs.push_back({"", arr.dump(2) + "\n"});
  }
  r.parameters = {{"n", a.n}, {"alphas", alphas}, {"floor_c", opt_json(a.floor_c)}};
  return r;
}

struct ExactArgs {
  std::string spec;
  bool reverse = false;
  bool cross_check = false;
  int draws = 0;
};
CommandResult cmd_exact(const ExactArgs& a, const Globals& g) {
  const auto spec = read_spec_file(a.spec);
  EnumerationOptions o;
  o.reverse = a.reverse;
  o.cross_check = a.cross_check;
  o.threads = g.threads;
  const auto s = exact_summary(spec, o);
  json doc = {{"n", s.n},
              {"log_partition", s.log_partition},
              {"psi_n", s.psi_n},
              {"mean", s.mean},
              {"pair_corr", s.pair_corr},
              {"cross_check_error", s.cross_check_error}};
  CommandResult r;
  r.outputs.push_back({"", render_doc(doc, g.format.empty() ? "json" : g.format)});
  if (a.draws > 0) {
    std::ostringstream os;
    for (const auto& c : exact_sample(spec, a.draws, g.seed)) {
      for (int i = 0; i < c.size(); ++i) os << (i ? "," : "") << int(c[i]);
      os << "\n";
    }
    r.outputs.push_back({".samples.csv", os.str()});
    r.seeds = {{"draws", g.seed}};
    r.rng_algorithm = std::string(Rng::kAlgorithm);
  }
  r.parameters = {{"spec", spec_json(spec)},
                  {"reverse", a.reverse},
                  {"cross_check", a.cross_check},
                  {"draws", a.draws}};
  r.inputs = {a.spec};
  return r;
}

struct SampleArgs {
  std::string spec;
  std::uint64_t burn_in = 1000, samples = 1000, thin = 1;
  int chains = 1;
  int batches = 50;
  std::string init = "random";
};
CommandResult cmd_sample(const SampleArgs& a, const Globals& g) {
  const auto spec = read_spec_file(a.spec);
  static const std::map<std::string, ChainInit> inits = {{"random", ChainInit::random},
                                                         {"zeros", ChainInit::zeros},
                                                         {"ones", ChainInit::ones},
                                                         {"dispersed", ChainInit::dispersed}};
  ChainOptions o;
  o.seed = g.seed;
  o.burn_in = a.burn_in;
  o.samples = a.samples;
  o.thin = a.thin;
  o.batches = a.batches;
  o.init = inits.at(a.init);
  const auto mc = run_chains(spec, o, a.chains, g.threads);

  std::ostringstream csv;
  csv << "chain";
  for (int i = 1; i <= spec.n(); ++i) csv << ",x" << i;
  csv << "\n";
  auto per_chain = json::array();
  json seeds = json::array();
  for (std::size_t c = 0; c < mc.chains.size(); ++c) {
    const auto& ch = mc.chains[c];
    for (const auto& cfg : ch.samples) {
      csv << c;
      for (int i = 0; i < cfg.size(); ++i) csv << "," << int(cfg[i]);
      csv << "\n";
    }
    const auto& d = ch.diagnostics;
    auto acf = json::array();
    for (const auto& [lag, v] : d.autocorrelation) acf.push_back({{"lag", lag}, {"acf", v}});
    per_chain.push_back({{"seed", ch.final_state.rng_seed},
                         {"updates", d.updates},
                         {"sweeps", d.sweeps},
                         {"mean", d.mean},
                         {"std_error", d.std_error},
                         {"density_mean", d.density_mean},
                         {"autocorrelation", acf},
                         {"split_discrepancy", d.split_discrepancy},
                         {"max_drift", d.max_drift}});
    seeds.push_back(ch.final_state.rng_seed);
  }
  json diag = {{"rng_algorithm", std::string(Rng::kAlgorithm)},
               {"chains", per_chain},
               {"split_rhat", mc.split_rhat},
               {"slow_mixing", mc.slow_mixing}};
  CommandResult r;
  const std::string fmt = g.format.empty() ? "csv" : g.format;
  if (fmt == "json") {
    auto rows = json::array();
    for (std::size_t c = 0; c < mc.chains.size(); ++c)
      for (const auto& cfg : mc.chains[c].samples) rows.push_back({{"chain", c}, {"x", cfg.bits()}});
    r.outputs.push_back({"", rows.dump() + "\n"});
  } else {
    r.outputs.push_back({"", csv.str()});
  }
  r.outputs.push_back({".diagnostics.json", diag.dump(2) + "\n"});
  r.parameters = {{"spec", spec_json(spec)}, {"burn_in", a.burn_in}, {"samples", a.samples}, {"thin", a.thin},
                  {"chains", a.chains},      {"batches", a.batches}, {"init", a.init}};
  r.seeds = {{"base", g.seed}, {"chains", seeds}};
  r.rng_algorithm = std::string(Rng::kAlgorithm);
  r.inputs = {a.spec};
  return r;
}

struct CompressArgs {
  std::string spec, x;
  double delta = 0.25;
};
CommandResult cmd_compress(const CompressArgs& a, const Globals& g) {
  if (!(a.delta > 0.0 && a.delta < 1.0)) throw InvalidParameter("--delta must lie in (0, 1)");
  const auto spec = read_spec_file(a.spec);
  const auto x = load_weights(a.x, spec.n());
  const auto res = compress(spec, x, a.delta, g.seed);
  const auto rep = compression_report(spec, x, res.block, a.delta);
  json doc = {{"values", res.block.values},
              {"community_of", res.block.community_of},
              {"community_count", res.block.community_count},
              {"k", res.k},
              {"delta", res.delta},
              {"seed", res.seed},
              {"log_community_bound", res.log_community_bound},
              {"log_net_size", res.log_net_size},
              {"log_reference_net_bound", res.log_reference_net_bound},
              {"report",
               {{"distance", rep.distance},
                {"theorem_bound", rep.theorem_bound},
                {"proof_bound", rep.proof_bound},
                {"theorem_bound_holds", rep.theorem_bound_holds},
                {"proof_bound_holds", rep.proof_bound_holds},
                {"theorem_bound_vacuous", rep.theorem_bound_vacuous},
                {"proof_bound_vacuous", rep.proof_bound_vacuous},
                {"residual", rep.residual},
                {"member", rep.member}}}};
  CommandResult r;
  r.outputs.push_back({"", render_doc(doc, g.format.empty() ? "json" : g.format)});
  r.parameters = {{"spec", spec_json(spec)}, {"delta", a.delta}};
  r.seeds = {{"projection", g.seed}};
  r.rng_algorithm = std::string(Rng::kAlgorithm);
  r.inputs = {a.spec, a.x};
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidParameter(path + ": cannot write output");
  f << content;
  if (!f) throw InvalidParameter(path + ": write failed");
}

int emit(const std::string& command, const std::vector<std::string>& args, const Globals& g, CommandResult r,
         std::ostream& out, std::ostream& err) {
  if (g.out.empty()) {
    for (std::size_t i = 0; i < r.outputs.size(); ++i) (i == 0 ? out : err) << r.outputs[i].content;
  } else {
    RunManifest m;
    m.command = command;
    m.args = args;
    m.parameters = r.parameters;
    m.parameters["format"] = g.format;
    m.parameters["threads"] = g.threads;
    m.seeds = r.seeds;
    m.seeds["global"] = g.seed;
    m.rng_algorithm = r.rng_algorithm;
    for (const auto& in : r.inputs) m.inputs.push_back({in, "", sha256_file(in)});
    for (const auto& o : r.outputs) {
      write_file(g.out + o.suffix, o.content);
      m.outputs.push_back({g.out + o.suffix, o.suffix, sha256_hex(o.content)});
    }
    write_file(g.out + ".manifest.json", m.to_json().dump(2) + "\n");
  }
  if (!r.failure.empty()) {
    err << "error: " << r.failure << "\n";
    return kNonConvergence;
  }
  return kOk;
}

std::string out_value(const std::vector<std::string>& args, std::size_t* index) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out" && i + 1 < args.size()) {
      *index = i + 1;
      return args[i + 1];
    }
    if (args[i].rfind("--out=", 0) == 0) {
      *index = i;
      return args[i].substr(6);
    }
  }
  return {};
}

int cmd_replay(const std::string& manifest_path, bool keep, std::ostream& out, std::ostream& err) {
  const auto m = RunManifest::load(manifest_path);
  if (m.version != kVersion)
    err << "warning: manifest written by version " << m.version << ", running " << kVersion << "\n";
  for (const auto& in : m.inputs)
    if (sha256_file(in.path) != in.sha256) throw ParseError(in.path + ": input changed since the recorded run");

  auto args = m.args;
  std::size_t idx = 0;
  const std::string orig = out_value(args, &idx);
  if (orig.empty()) throw ParseError(manifest_path + ": recorded arguments carry no --out");
  const std::string fresh = orig + ".replay";
  args[idx] = args[idx].rfind("--out=", 0) == 0 ? "--out=" + fresh : fresh;

  std::ostringstream sink;
  const int code = run(args, sink, err);
  json report = {{"manifest", manifest_path}, {"command", m.command}, {"exit_code", code}};
  bool identical = code == kOk;
  auto files = json::array();
  for (const auto& o : m.outputs) {
    const std::string path = fresh + o.suffix;
    std::string actual;
    if (std::filesystem::exists(path)) actual = sha256_file(path);
    const bool same = actual == o.sha256;
    identical = identical && same;
    files.push_back({{"suffix", o.suffix}, {"expected", o.sha256}, {"actual", actual}, {"identical", same}});
    if (!keep) std::filesystem::remove(path);
  }
  if (!keep) std::filesystem::remove(fresh + ".manifest.json");
  report["outputs"] = files;
  report["identical"] = identical;
  out << report.dump(2) << "\n";
  if (code != kOk) return code;
  return identical ? kOk : kReplayMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean-field analysis of vertex-weighted clique models", "vwergm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  Globals g;
  app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output path; also writes <out>.manifest.json");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 1024))->capture_default_str();

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "f(X), gradient, residual and constants");
  eval->add_option("spec", ea.spec, "Model file")->required()->check(CLI::ExistingFile);
  eval->add_option("x", ea.x, "Weight vector (CSV or JSON array)")->required()->check(CLI::ExistingFile);

  FixpointArgs fa;
  auto* fix = app.add_subcommand("fixpoint", "Iterate X <- Phi(X) and report distance bounds");
  fix->add_option("spec", fa.spec, "Model file")->required()->check(CLI::ExistingFile);
  auto* x0opt = fix->add_option("--x0", fa.x0, "Starting vector file")->check(CLI::ExistingFile);
  fix->add_option("--start", fa.start, "Constant starting value (default p)")->excludes(x0opt);
  fix->add_option("--tol", fa.tol)->capture_default_str();
  fix->add_option("--max-iter", fa.max_iter)->check(CLI::PositiveNumber)->capture_default_str();
  fix->add_flag("!--no-bounds", fa.bounds, "Skip the closed-form distance bounds");

  PhaseArgs pa;
  auto* phase = app.add_subcommand("phase", "Scalar root counts over an (alpha, p) grid");
  phase->add_option("spec", pa.spec, "Template model file; term weights are multiplied by alpha")
      ->required()
      ->check(CLI::ExistingFile);
  phase->add_option("--alpha", pa.alpha_grid, "lo:hi:count or comma list")->required();
  phase->add_option("--p", pa.p_grid, "lo:hi:count or comma list")->required();
  phase->add_option("--resolution", pa.resolution, "Scan grid size")->check(CLI::Range(1000, 100000000))
      ->capture_default_str();

  SweepArgs sa;
  auto* sweep = app.add_subcommand("triangle-sweep", "Two-block triangle solutions along an alpha list");
  sweep->add_option("--n", sa.n)->capture_default_str();
  sweep->add_option("--alphas", sa.alphas, "lo:hi:count or comma list")->capture_default_str();
  sweep->add_option("--floor-c", sa.floor_c, "Add an exp(-c alpha) column");

  ExactArgs xa;
  auto* exact = app.add_subcommand("exact", "Exact enumeration over {0,1}^n");
  exact->add_option("spec", xa.spec, "Model file")->required()->check(CLI::ExistingFile);
  exact->add_flag("--reverse", xa.reverse, "Enumerate in reverse chunk order");
  exact->add_flag("--cross-check", xa.cross_check, "Re-enumerate in the opposite order and compare");
  exact->add_option("--draws", xa.draws, "Exact samples written to <out>.samples.csv")->check(CLI::NonNegativeNumber);

  SampleArgs ma;
  auto* sample = app.add_subcommand("sample", "Glauber dynamics");
  sample->add_option("spec", ma.spec, "Model file")->required()->check(CLI::ExistingFile);
  sample->add_option("--burn-in", ma.burn_in)->capture_default_str();
  sample->add_option("--samples", ma.samples)->check(CLI::PositiveNumber)->capture_default_str();
  sample->add_option("--thin", ma.thin)->check(CLI::PositiveNumber)->capture_default_str();
  sample->add_option("--chains", ma.chains)->check(CLI::PositiveNumber)->capture_default_str();
  sample->add_option("--batches", ma.batches)->check(CLI::Range(2, 100000))->capture_default_str();
  sample->add_option("--init", ma.init)
      ->check(CLI::IsMember({"random", "zeros", "ones", "dispersed"}))
      ->capture_default_str();

  CompressArgs ca;
  auto* comp = app.add_subcommand("compress", "Block-vector compression of a weight vector");
  comp->add_option("spec", ca.spec, "Model file")->required()->check(CLI::ExistingFile);
  comp->add_option("x", ca.x, "Weight vector (CSV or JSON array)")->required()->check(CLI::ExistingFile);
  comp->add_option("--delta", ca.delta, "Net scale in (0, 1)")->capture_default_str();

  std::string manifest;
  bool keep = false;
  auto* replay = app.add_subcommand("replay", "Rerun a manifest and compare output digests");
  replay->add_option("manifest", manifest)->required()->check(CLI::ExistingFile);
  replay->add_flag("--keep", keep, "Keep the regenerated files");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*replay) return cmd_replay(manifest, keep, out, err);
    CommandResult r;
    std::string name;
    if (*eval) {
      name = "eval";
      r = cmd_eval(ea, g);
    } else if (*fix) {
      name = "fixpoint";
      r = cmd_fixpoint(fa, g);
    } else if (*phase) {
      name = "phase";
      r = cmd_phase(pa, g);
    } else if (*sweep) {
      name = "triangle-sweep";
      r = cmd_triangle_sweep(sa, g);
    } else if (*exact) {
      name = "exact";
      r = cmd_exact(xa, g);
    } else if (*sample) {
      name = "sample";
      r = cmd_sample(ma, g);
    } else {
      name = "compress";
      r = cmd_compress(ca, g);
    }
    return emit(name, args, g, std::move(r), out, err);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::logic_error& e) {
    // invalid_argument and domain_error are usage problems; other logic errors are numerical
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e)) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace vwergm::cli
