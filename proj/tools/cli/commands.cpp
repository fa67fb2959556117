#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "condvol/estimators.hpp"
#include "condvol/parallel.hpp"
#include "condvol/statespace.hpp"
#include "condvol/stats.hpp"
#include "condvol/xstate.hpp"

namespace condvol::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int env_default_threads() {
  if (const char* env = std::getenv("CONDVOL_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

MetricConvention parse_convention(const std::string& name) {
  if (name == "paper-uniform") return MetricConvention::PaperUniform;
  if (name == "trace-exact") return MetricConvention::TraceExact;
  throw UsageError("unknown convention '" + name + "' (use paper-uniform or trace-exact)");
}

std::vector<double> parse_grid(const std::string& spec) {
  double start = 0, stop = 0, step = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &tail) != 3)
    throw UsageError("grid must have the form start:stop:step");
  if (!(step > 0)) throw UsageError("grid step must be positive");
  std::vector<double> grid;
  for (double r = start; r <= stop + 1e-12; r += step) grid.push_back(std::min(r, stop));
  if (grid.empty()) throw UsageError("grid is empty");
  for (double r : grid)
    if (!(r >= 0.0 && r <= 1.0)) throw UsageError("grid values must lie in [0, 1]");
  return grid;
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open output file '" + path + "'");
    out_ << header << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ",";
      out_ << cells[i];
    }
    out_ << "\n";
    if (!out_) throw std::runtime_error("write failure on output file");
  }
  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("close failure on output file");
  }

 private:
  std::ofstream out_;
};

struct Common {
  std::uint64_t seed = 1;
  int threads = env_default_threads();
  double tol = kPsdTol;
  std::string out;
  std::string convention = "paper-uniform";
};

RunContext make_ctx(const Common& c, std::uint64_t task) {
  RunContext ctx;
  ctx.seed = c.seed;
  ctx.task_id = task;
  ctx.threads = c.threads;
  ctx.tol = c.tol;
  return ctx;
}

json manifest_base(const std::string& command, const Common& c, const json& params,
                   const std::string& csv_header) {
  json j;
  j["command"] = command;
  j["artifact"] = {{"name", "condvol"}, {"version", kVersion}};
  j["parameters"] = params;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["tol"] = c.tol;
  j["rng"] = "philox4x64-10";
  j["stream_layout"] = {{"chunk_size", kChunkSize},
                        {"stream_id", "task_index * 2^32 + chunk_index"},
                        {"task_order", "grid/bin index, 0-based"}};
  j["generator_order"] =
      "symmetric pairs (lexicographic), antisymmetric pairs (lexicographic), diagonal";
  j["output"] = c.out;
  j["csv_header"] = csv_header;
  return j;
}

void write_manifest(const Common& c, json manifest, double wall_seconds,
                    const json& results) {
  manifest["wall_time_seconds"] = wall_seconds;
  if (!results.is_null()) manifest["results"] = results;
  const std::string path = c.out + ".manifest.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open manifest file '" + path + "'");
  out << manifest.dump(2) << "\n";
}

std::string convention_name(MetricConvention conv) {
  return conv == MetricConvention::PaperUniform ? "paper-uniform" : "trace-exact";
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

// ---- subcommand bodies ----------------------------------------------------

int cmd_constants(int m, const std::string& convention_flag) {
  if (m < 2) throw UsageError("--m must be >= 2");
  const MetricConvention conv = parse_convention(convention_flag);
  json j;
  j["m"] = m;
  j["convention"] = convention_name(conv);
  j["zs_total_volume"] = zs_total_volume(2, m);
  j["conjectured_v0"] = conjectured_v0(m);
  j["x_cond_volume_euclid_r0"] = x_cond_volume_euclid(0.0);
  j["x_sep_volume_euclid_r0"] = x_sep_volume_euclid(0.0);
  j["x_cond_volume_hs_r0"] = x_cond_volume_hs(0.0, conv);
  j["x_total_volume_hs"] = x_total_volume_hs(conv);
  j["x_psep"] = x_psep(0.0);
  if (m == 2) j["conjectured_P_sep"] = 8.0 / 33.0;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_xvol(const Common& c, const std::vector<double>& grid, long long samples) {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  const MetricConvention conv = parse_convention(c.convention);
  const std::string header = "r,v_mc,v_mc_err,v_analytic";
  Timer timer;
  json params = {{"r_grid", grid}, {"samples", samples},
                 {"convention", convention_name(conv)}};
  json manifest = manifest_base("xvol", c, params, header);
  CsvWriter csv(c.out, header);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    const VolumeEstimate est = estimate_x_volume(r, samples, conv, make_ctx(c, i));
    csv.row({fmt17(r), fmt17(est.value), fmt17(est.std_error),
             fmt17(x_cond_volume_hs(r, conv))});
    std::cerr << "xvol: r=" << r << " accepted " << est.n_accepted << "/" << samples
              << "\n";
  }
  csv.close();
  write_manifest(c, std::move(manifest), timer.seconds(), json());
  return 0;
}

int cmd_vol(const Common& c, const std::vector<double>& grid, int m, long long samples) {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  if (m != 2)
    throw UsageError("--m must be 2: the [-1,1] cube encloses the body only for "
                     "two qubits, and rejection is impractical beyond it");
  const MetricConvention conv = parse_convention(c.convention);
  // conjectured_volume is stated in the trace-exact convention of the slice.
  std::vector<CoordKind> kinds(3, CoordKind::B);
  kinds.insert(kinds.end(), 9, CoordKind::C);
  const double conv_ratio = euclid_to_hs_factor(2, 2, kinds, conv) /
                            euclid_to_hs_factor(2, 2, kinds, MetricConvention::TraceExact);
  const std::string header = "r,v_mc,v_mc_err,v_conjectured";
  Timer timer;
  json params = {{"r_grid", grid}, {"m", m}, {"samples", samples},
                 {"convention", convention_name(conv)}};
  json manifest = manifest_base("vol", c, params, header);
  CsvWriter csv(c.out, header);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    const VolumeEstimate est =
        estimate_conditioned_volume(r, m, samples, conv, make_ctx(c, i));
    csv.row({fmt17(r), fmt17(est.value), fmt17(est.std_error),
             fmt17(conjectured_volume(r, m) * conv_ratio)});
    std::cerr << "vol: r=" << r << " accepted " << est.n_accepted << "/" << samples
              << "\n";
  }
  csv.close();
  write_manifest(c, std::move(manifest), timer.seconds(), json());
  return 0;
}

int cmd_hist(const Common& c, int m, long long samples, int bins) {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  if (m < 2) throw UsageError("--m must be >= 2");
  if (bins < 10) throw UsageError("--bins must be >= 10");
  const std::string header = "r_lo,r_hi,count,envelope";
  Timer timer;
  json params = {{"m", m}, {"samples", samples}, {"bins", bins}};
  json manifest = manifest_base("hist", c, params, header);
  const RadiusHistogram hist = radius_histogram(m, samples, bins, make_ctx(c, 0));
  CsvWriter csv(c.out, header);
  for (std::size_t i = 0; i + 1 < hist.bin_edges.size(); ++i) {
    csv.row({fmt17(hist.bin_edges[i]), fmt17(hist.bin_edges[i + 1]),
             std::to_string(hist.counts[i]), fmt17(hist.envelope[i])});
  }
  csv.close();
  const ExponentFit fit = fit_envelope_exponent(hist);
  json results = {{"fitted_exponent", fit.exponent},
                  {"fitted_exponent_std_error", fit.std_error},
                  {"bins_used", fit.bins_used},
                  {"conjectured_exponent", 2 * (m * m - 1)}};
  write_manifest(c, std::move(manifest), timer.seconds(), results);
  std::cerr << "hist: fitted exponent " << fit.exponent << " +/- " << fit.std_error
            << " (conjectured " << 2 * (m * m - 1) << ")\n";
  return 0;
}

int cmd_psep(const Common& c, const std::vector<double>& grid, int m, long long samples) {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  if (m < 2) throw UsageError("--m must be >= 2");
  for (double r : grid)
    if (r >= 1.0) throw UsageError("psep grid points must lie in [0, 1)");
  const std::string header = "r,p,p_err,n_samples,n_hits,low_count";
  Timer timer;
  json params = {{"r_grid", grid}, {"m", m}, {"samples", samples}};
  json manifest = manifest_base("psep", c, params, header);
  CsvWriter csv(c.out, header);
  std::vector<std::pair<double, ProbabilityEstimate>> measured;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    const ProbabilityEstimate est = estimate_psep(r, m, samples, make_ctx(c, i));
    measured.emplace_back(r, est);
    csv.row({fmt17(r), fmt17(est.value), fmt17(est.std_error),
             std::to_string(est.n_samples), std::to_string(est.n_hits),
             est.low_count ? "1" : "0"});
    std::cerr << "psep: r=" << r << " p=" << est.value << "\n";
  }
  // Analytic endpoint: a pure reduced state forces a separable total state.
  const ProbabilityEstimate endpoint = estimate_psep(1.0, m, 1, make_ctx(c, grid.size()));
  csv.row({fmt17(1.0), fmt17(endpoint.value), fmt17(0.0), "0", "0", "0"});
  csv.close();
  const IntegrationResult integral = integrate_psep(measured);
  json results = {{"P_sep", integral.value},
                  {"P_sep_std_error", integral.std_error},
                  {"label", m <= 3 ? "separable (PPT)" : "positive-partial-transpose"}};
  write_manifest(c, std::move(manifest), timer.seconds(), results);
  std::cerr << "psep: integrated " << integral.value << " +/- " << integral.std_error
            << "\n";
  return 0;
}

int cmd_psep_product(const Common& c, long long samples, int bins) {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  if (bins < 2) throw UsageError("--bins must be >= 2");
  const std::string header = "r_lo,r_hi,n,n_ppt,p,p_err,unreliable";
  Timer timer;
  json params = {{"samples", samples}, {"bins", bins}};
  json manifest = manifest_base("psep-product", c, params, header);
  const auto result = estimate_psep_product_measure(samples, bins, make_ctx(c, 0));
  CsvWriter csv(c.out, header);
  long long total = 0, hits = 0;
  std::vector<double> values, errors;
  for (const auto& bin : result) {
    csv.row({fmt17(bin.r_lo), fmt17(bin.r_hi), std::to_string(bin.estimate.n_samples),
             std::to_string(bin.estimate.n_hits), fmt17(bin.estimate.value),
             fmt17(bin.estimate.std_error), bin.unreliable ? "1" : "0"});
    total += bin.estimate.n_samples;
    hits += bin.estimate.n_hits;
    if (!bin.unreliable) {
      values.push_back(bin.estimate.value);
      errors.push_back(bin.estimate.std_error);
    }
  }
  csv.close();
  json results;
  results["global_ppt_fraction"] = total > 0 ? static_cast<double>(hits) / total : 0.0;
  if (values.size() >= 2) {
    const Chi2FlatnessResult flat = chi2_flatness(values, errors);
    results["flatness_chi2"] = flat.statistic;
    results["flatness_df"] = flat.df;
    results["flatness_p_value"] = flat.p_value;
  }
  write_manifest(c, std::move(manifest), timer.seconds(), results);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Hilbert-Schmidt volumes and separability probabilities of "
               "conditioned bipartite state spaces"};
  app.require_subcommand(1);

  Common common;

  struct GridOpts {
    std::string spec;
    double r = -1.0;
  };

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "RNG seed (64-bit)");
    sub->add_option("--threads", common.threads,
                    "worker threads (default: CONDVOL_THREADS or 1)");
    sub->add_option("--tol", common.tol, "positivity tolerance");
    sub->add_option("--out", common.out, "output CSV path")->required();
  };
  auto add_grid = [&](CLI::App* sub, GridOpts& opts) {
    sub->add_option("--r", opts.r, "single radius in [0, 1]");
    sub->add_option("--r-grid", opts.spec, "radius grid start:stop:step");
  };
  auto resolve_grid = [](const GridOpts& opts, const char* fallback) {
    if (!opts.spec.empty() && opts.r >= 0.0)
      throw UsageError("give either --r or --r-grid, not both");
    if (opts.r >= 0.0) {
      if (opts.r > 1.0) throw UsageError("--r must lie in [0, 1]");
      return std::vector<double>{opts.r};
    }
    return parse_grid(opts.spec.empty() ? fallback : opts.spec);
  };

  CLI::App* xvol = app.add_subcommand(
      "xvol", "conditioned X-state volume: Monte Carlo next to the closed form");
  GridOpts xvol_grid;
  long long xvol_samples = 1000000;
  std::string xvol_convention = "paper-uniform";
  add_common(xvol);
  add_grid(xvol, xvol_grid);
  xvol->add_option("--samples", xvol_samples, "proposals per grid point");
  xvol->add_option("--convention", xvol_convention, "paper-uniform | trace-exact");

  CLI::App* vol = app.add_subcommand(
      "vol", "conditioned two-qubit volume by cube rejection, with conjecture column");
  GridOpts vol_grid;
  int vol_m = 2;
  long long vol_samples = 10000000;
  std::string vol_convention = "trace-exact";
  add_common(vol);
  add_grid(vol, vol_grid);
  vol->add_option("--m", vol_m, "environment dimension (2)");
  vol->add_option("--samples", vol_samples, "proposals per grid point");
  vol->add_option("--convention", vol_convention, "paper-uniform | trace-exact");

  CLI::App* hist = app.add_subcommand(
      "hist", "Bloch-radius histogram of HS-uniform states with conjectured envelope");
  int hist_m = 2;
  long long hist_samples = 1000000;
  int hist_bins = 100;
  add_common(hist);
  hist->add_option("--m", hist_m, "environment dimension");
  hist->add_option("--samples", hist_samples, "number of sampled states");
  hist->add_option("--bins", hist_bins, "histogram bins (>= 10)");

  CLI::App* psep = app.add_subcommand(
      "psep", "separability/PPT probability over a radius grid, with integral");
  GridOpts psep_grid;
  int psep_m = 2;
  long long psep_samples = 100000;
  add_common(psep);
  add_grid(psep, psep_grid);
  psep->add_option("--m", psep_m, "environment dimension");
  psep->add_option("--samples", psep_samples, "samples per grid point");

  CLI::App* psep_product = app.add_subcommand(
      "psep-product", "binned PPT probability under the simplex x Haar product measure");
  long long prod_samples = 1000000;
  int prod_bins = 25;
  add_common(psep_product);
  psep_product->add_option("--samples", prod_samples, "number of sampled states");
  psep_product->add_option("--bins", prod_bins, "radius bins");

  CLI::App* constants = app.add_subcommand(
      "constants", "closed-form reference values as JSON on stdout");
  int const_m = 2;
  std::string const_convention = "paper-uniform";
  constants->add_option("--m", const_m, "environment dimension");
  constants->add_option("--convention", const_convention,
                        "paper-uniform | trace-exact");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (common.threads < 1) throw UsageError("--threads must be >= 1");
    if (!(common.tol > 0)) throw UsageError("--tol must be positive");

    if (app.got_subcommand(constants)) return cmd_constants(const_m, const_convention);
    if (app.got_subcommand(xvol)) {
      common.convention = xvol_convention;
      return cmd_xvol(common, resolve_grid(xvol_grid, "0:1:0.1"), xvol_samples);
    }
    if (app.got_subcommand(vol)) {
      common.convention = vol_convention;
      return cmd_vol(common, resolve_grid(vol_grid, "0:1:0.1"), vol_m, vol_samples);
    }
    if (app.got_subcommand(hist)) return cmd_hist(common, hist_m, hist_samples, hist_bins);
    if (app.got_subcommand(psep))
      return cmd_psep(common, resolve_grid(psep_grid, "0:0.99:0.0495"), psep_m,
                      psep_samples);
    if (app.got_subcommand(psep_product))
      return cmd_psep_product(common, prod_samples, prod_bins);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace condvol::cli
