#include "condvol/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "condvol/parallel.hpp"
#include "condvol/stats.hpp"

namespace condvol {

namespace {

using Complex = std::complex<double>;

RandomStream chunk_stream(const RunContext& ctx, std::uint64_t chunk) {
  return RandomStream(ctx.seed, make_stream_id(ctx.task_id, chunk));
}

VolumeEstimate finish_volume(double r, long long n_samples, long long accepted,
                             double cube_volume, double factor,
                             MetricConvention convention, int dims) {
  VolumeEstimate est;
  est.r = r;
  est.n_samples = n_samples;
  est.n_accepted = accepted;
  est.convention = convention;
  est.dims = dims;
  const double p = static_cast<double>(accepted) / static_cast<double>(n_samples);
  est.value = p * cube_volume * factor;
  est.std_error = cube_volume * factor * std::sqrt(p * (1.0 - p) / n_samples);
  return est;
}

long long reduce_counts(const std::vector<long long>& partials) {
  long long total = 0;
  for (long long c : partials) total += c;
  return total;
}

double x_slice_factor(MetricConvention convention) {
  static constexpr CoordKind kinds[6] = {CoordKind::B, CoordKind::C, CoordKind::C,
                                         CoordKind::C, CoordKind::C, CoordKind::C};
  return euclid_to_hs_factor(2, 2, kinds, convention);
}

ProbabilityEstimate finish_probability(double r, int m, long long n, long long hits) {
  ProbabilityEstimate est;
  est.r = r;
  est.n_samples = n;
  est.n_hits = hits;
  est.label = (m <= 3) ? ProbabilityLabel::Separable
                       : ProbabilityLabel::PositivePartialTranspose;
  if (n > 0) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    est.value = p;
    est.std_error = std::sqrt(p * (1.0 - p) / n);
  }
  est.low_count = hits < 10;
  return est;
}

double envelope_log_density_norm(int m) {
  // Z = int_0^1 r^2 (1 - r^2)^k dr = Gamma(3/2) Gamma(k+1) / (2 Gamma(k+5/2)).
  const int k = 2 * (m * m - 1);
  return std::lgamma(1.5) + std::lgamma(k + 1.0) - std::lgamma(k + 2.5) -
         std::log(2.0);
}

// Integral of the normalized conjectured radius density over [lo, hi] by
// 5-point Gauss-Legendre (the density is smooth on every bin).
double envelope_bin_mass(int m, double log_norm, double lo, double hi) {
  static const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                  0.5384693101056831, 0.9061798459386640};
  static const double weights[5] = {0.2369268850561891, 0.4786286704993665,
                                    0.5688888888888889, 0.4786286704993665,
                                    0.2369268850561891};
  const int k = 2 * (m * m - 1);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double rr = mid + half * nodes[i];
    const double w = 1.0 - rr * rr;
    if (w <= 0.0) continue;
    sum += weights[i] * rr * rr * std::exp(k * std::log(w) - log_norm);
  }
  return sum * half;
}

}  // namespace

VolumeEstimate estimate_x_volume(double r, long long n_samples,
                                 MetricConvention convention, const RunContext& ctx) {
  if (n_samples < 1) throw std::invalid_argument("estimate_x_volume: need n >= 1");
  auto partials = run_chunks<long long>(
      n_samples, ctx.threads, [&](std::uint64_t chunk, long long count) {
        RandomStream stream = chunk_stream(ctx, chunk);
        return count_accepted_x(r, count, stream);
      });
  return finish_volume(r, n_samples, reduce_counts(partials), 64.0,
                       x_slice_factor(convention), convention, 6);
}

VolumeEstimate estimate_x_total_volume(long long n_samples, MetricConvention convention,
                                       const RunContext& ctx) {
  if (n_samples < 1) throw std::invalid_argument("estimate_x_total_volume: need n >= 1");
  auto partials = run_chunks<long long>(
      n_samples, ctx.threads, [&](std::uint64_t chunk, long long count) {
        RandomStream stream = chunk_stream(ctx, chunk);
        return count_accepted_x_total(count, stream);
      });
  // Proposal region [0,1] x [-1,1]^6; the a3 direction carries no weight.
  return finish_volume(0.0, n_samples, reduce_counts(partials), 64.0,
                       x_slice_factor(convention), convention, 7);
}

VolumeEstimate estimate_conditioned_volume(double r, int m, long long n_samples,
                                           MetricConvention convention,
                                           const RunContext& ctx) {
  if (n_samples < 1)
    throw std::invalid_argument("estimate_conditioned_volume: need n >= 1");
  if (m < 2) throw std::invalid_argument("estimate_conditioned_volume: m must be >= 2");
  auto partials = run_chunks<long long>(
      n_samples, ctx.threads, [&](std::uint64_t chunk, long long count) {
        RandomStream stream = chunk_stream(ctx, chunk);
        return count_accepted_conditioned(r, m, count, stream, ctx.tol);
      });
  const int dims = 4 * m * m - 4;
  std::vector<CoordKind> kinds;
  kinds.insert(kinds.end(), m * m - 1, CoordKind::B);
  kinds.insert(kinds.end(), 3 * (m * m - 1), CoordKind::C);
  const double factor = euclid_to_hs_factor(2, m, kinds, convention);
  return finish_volume(r, n_samples, reduce_counts(partials), std::pow(2.0, dims),
                       factor, convention, dims);
}

ProbabilityEstimate estimate_psep(double r, int m, long long n_samples,
                                  const RunContext& ctx) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("estimate_psep: r in [0, 1]");
  if (m < 2) throw std::invalid_argument("estimate_psep: m must be >= 2");
  if (r == 1.0) {
    // A pure reduced state forces a product total state: analytically 1.
    ProbabilityEstimate est = finish_probability(r, m, 0, 0);
    est.value = 1.0;
    est.std_error = 0.0;
    est.low_count = false;
    return est;
  }
  if (n_samples < 1) throw std::invalid_argument("estimate_psep: need n >= 1");
  Eigen::Matrix2cd eta = Eigen::Matrix2cd::Zero();
  eta(0, 0) = 0.5 * (1.0 + r);
  eta(1, 1) = 0.5 * (1.0 - r);
  auto partials = run_chunks<long long>(
      n_samples, ctx.threads, [&](std::uint64_t chunk, long long count) {
        RandomStream stream = chunk_stream(ctx, chunk);
        ConditionedSampler sampler(eta, m);
        long long hits = 0;
        for (long long i = 0; i < count; ++i) {
          sampler.sample(stream);
          if (sampler.current_is_ppt(ctx.tol)) ++hits;
        }
        return hits;
      });
  return finish_probability(r, m, n_samples, reduce_counts(partials));
}

ProbabilityEstimate estimate_x_psep(double r, long long n_proposals,
                                    const RunContext& ctx) {
  if (r == 1.0) {
    ProbabilityEstimate est = finish_probability(r, 2, 0, 0);
    est.value = 1.0;
    est.low_count = false;
    return est;
  }
  auto partials = run_chunks<XPptCounts>(
      n_proposals, ctx.threads, [&](std::uint64_t chunk, long long count) {
        RandomStream stream = chunk_stream(ctx, chunk);
        return count_x_accepted_ppt(r, count, stream);
      });
  XPptCounts total;
  for (const auto& p : partials) {
    total.accepted += p.accepted;
    total.ppt += p.ppt;
  }
  return finish_probability(r, 2, total.accepted, total.ppt);
}

ProbabilityEstimate estimate_x_psep_direct(double r, long long n_samples,
                                           const RunContext& ctx) {
  if (r == 1.0) {
    ProbabilityEstimate est = finish_probability(r, 2, 0, 0);
    est.value = 1.0;
    est.low_count = false;
    return est;
  }
  auto partials = run_chunks<long long>(
      n_samples, ctx.threads, [&](std::uint64_t chunk, long long count) {
        RandomStream stream = chunk_stream(ctx, chunk);
        return count_x_direct_ppt(r, count, stream);
      });
  return finish_probability(r, 2, n_samples, reduce_counts(partials));
}

RadiusHistogram radius_histogram(int m, long long n_samples, int n_bins,
                                 const RunContext& ctx) {
  if (n_bins < 10) throw std::invalid_argument("radius_histogram: need >= 10 bins");
  if (m < 2 || n_samples < 1) throw std::invalid_argument("radius_histogram: bad inputs");
  const int N = 2 * m;

  auto partials = run_chunks<std::vector<long long>>(
      n_samples, ctx.threads, [&](std::uint64_t chunk, long long count) {
        RandomStream stream = chunk_stream(ctx, chunk);
        std::vector<long long> local(static_cast<std::size_t>(n_bins), 0);
        Eigen::MatrixXcd mat(N, N);
        for (long long it = 0; it < count; ++it) {
          double total = 0.0;
          for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
              const Complex z = stream.complex_gaussian();
              mat(i, j) = z;
              total += std::norm(z);
            }
          // Reduced qubit state straight from the purification rows.
          double h00 = 0.0, h11 = 0.0;
          Complex h01(0, 0);
          for (int j = 0; j < m; ++j)
            for (int a = 0; a < N; ++a) {
              const Complex top = mat(j, a);
              const Complex bot = mat(m + j, a);
              h00 += std::norm(top);
              h11 += std::norm(bot);
              h01 += top * std::conj(bot);
            }
          const double d3 = h00 - h11;
          const double r = std::sqrt(d3 * d3 + 4.0 * std::norm(h01)) / total;
          int bin = static_cast<int>(r * n_bins);
          if (bin >= n_bins) bin = n_bins - 1;
          ++local[static_cast<std::size_t>(bin)];
        }
        return local;
      });

  RadiusHistogram hist;
  hist.m = m;
  hist.n_samples = n_samples;
  hist.counts.assign(static_cast<std::size_t>(n_bins), 0);
  hist.bin_edges.resize(static_cast<std::size_t>(n_bins) + 1);
  for (int i = 0; i <= n_bins; ++i)
    hist.bin_edges[static_cast<std::size_t>(i)] = static_cast<double>(i) / n_bins;
  for (const auto& local : partials)
    for (int i = 0; i < n_bins; ++i) hist.counts[static_cast<std::size_t>(i)] += local[i];

  hist.envelope.resize(static_cast<std::size_t>(n_bins));
  const double log_norm = envelope_log_density_norm(m);
  for (int i = 0; i < n_bins; ++i) {
    hist.envelope[static_cast<std::size_t>(i)] =
        n_samples * envelope_bin_mass(m, log_norm, hist.bin_edges[i], hist.bin_edges[i + 1]);
  }
  return hist;
}

ExponentFit fit_envelope_exponent(const RadiusHistogram& hist) {
  std::vector<double> x, y, w;
  const std::size_t bins = hist.counts.size();
  for (std::size_t i = 0; i < bins; ++i) {
    if (hist.counts[i] <= 0) continue;
    const double rc = 0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1]);
    if (rc >= 0.9) continue;
    const double count = static_cast<double>(hist.counts[i]);
    x.push_back(std::log(1.0 - rc * rc));
    y.push_back(std::log(count / (4.0 * M_PI * rc * rc)));
    w.push_back(count);  // Var[log n] ~ 1/n for Poisson counts
  }
  if (x.size() < 10)
    throw std::runtime_error("fit_envelope_exponent: fewer than 10 usable bins");
  const LineFit fit = weighted_least_squares(x, y, w);
  ExponentFit out;
  out.exponent = fit.slope;
  out.std_error = fit.slope_std_error;
  out.bins_used = static_cast<int>(x.size());
  return out;
}

double conjectured_v0(int m) {
  if (m < 2) throw std::invalid_argument("conjectured_v0: m must be >= 2");
  // Derived from the ZS total volume, the conjectured (1-r^2)^{2(m^2-1)}
  // profile and the 2^-3 a-coordinate conversion:
  //   V(0) = sqrt(m) 2^{2m^2-m+7/2} pi^{2m^2-m-3/2}
  //          prod_{k=1}^{2m} Gamma(k) Gamma(2m^2+1/2) / (Gamma(4m^2) Gamma(2m^2-1)).
  const double mm = static_cast<double>(m);
  double log_v = 0.5 * std::log(mm);
  log_v += (2.0 * m * m - m + 3.5) * std::log(2.0);
  log_v += (2.0 * m * m - m - 1.5) * std::log(M_PI);
  for (int k = 1; k <= 2 * m; ++k) log_v += log_factorial(k - 1);
  log_v += std::lgamma(2.0 * m * m + 0.5);
  log_v -= log_factorial(4 * m * m - 1);
  log_v -= log_factorial(2 * m * m - 2);
  const double v = std::exp(log_v);
  if (!std::isfinite(v)) throw std::overflow_error("conjectured_v0: log-space overflow");
  return v;
}

double conjectured_volume(double r, int m) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("conjectured_volume: r in [0, 1]");
  const int k = 2 * (m * m - 1);
  return conjectured_v0(m) * std::pow(1.0 - r * r, k);
}

IntegrationResult integrate_psep(
    const std::vector<std::pair<double, ProbabilityEstimate>>& grid) {
  if (grid.empty()) throw std::invalid_argument("integrate_psep: empty grid");
  if (grid.front().first != 0.0)
    throw std::invalid_argument("integrate_psep: grid must start at r = 0");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i].first < grid[i + 1].first))
      throw std::invalid_argument("integrate_psep: grid must be strictly increasing");
  }
  if (!(grid.back().first < 1.0))
    throw std::invalid_argument("integrate_psep: grid must stay below r = 1");

  const std::size_t k = grid.size();
  std::vector<double> weight(k, 0.0);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double h = grid[i + 1].first - grid[i].first;
    weight[i] += 0.5 * h;
    weight[i + 1] += 0.5 * h;
  }
  weight[k - 1] += 1.0 - grid.back().first;  // flat continuation to r = 1^-

  IntegrationResult res;
  double var = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    res.value += weight[i] * grid[i].second.value;
    var += weight[i] * weight[i] * grid[i].second.std_error * grid[i].second.std_error;
  }
  res.std_error = std::sqrt(var);
  return res;
}

std::vector<ProductMeasureBin> estimate_psep_product_measure(long long n_samples,
                                                             int n_bins,
                                                             const RunContext& ctx) {
  if (n_bins < 2 || n_samples < 1)
    throw std::invalid_argument("estimate_psep_product_measure: bad inputs");

  struct BinCounts {
    std::vector<long long> n, hits;
  };
  auto partials = run_chunks<BinCounts>(
      n_samples, ctx.threads, [&](std::uint64_t chunk, long long count) {
        RandomStream stream = chunk_stream(ctx, chunk);
        BinCounts local;
        local.n.assign(static_cast<std::size_t>(n_bins), 0);
        local.hits.assign(static_cast<std::size_t>(n_bins), 0);
        for (long long it = 0; it < count; ++it) {
          const Eigen::MatrixXcd rho = sample_product_measure(4, stream);
          const double a3 = (rho(0, 0) + rho(1, 1) - rho(2, 2) - rho(3, 3)).real();
          const Complex h01 = rho(0, 2) + rho(1, 3);
          const double r = std::sqrt(a3 * a3 + 4.0 * std::norm(h01));
          int bin = static_cast<int>(r * n_bins);
          if (bin >= n_bins) bin = n_bins - 1;
          ++local.n[static_cast<std::size_t>(bin)];

          Complex pt[16];
          for (int i = 0; i < 2; ++i)
            for (int ip = 0; ip < 2; ++ip)
              for (int j = 0; j < 2; ++j)
                for (int jp = 0; jp < 2; ++jp)
                  pt[(i * 2 + j) * 4 + (ip * 2 + jp)] = rho(i * 2 + jp, ip * 2 + j);
          if (detail::psd_shifted_cholesky(pt, 4, ctx.tol))
            ++local.hits[static_cast<std::size_t>(bin)];
        }
        return local;
      });

  std::vector<ProductMeasureBin> bins(static_cast<std::size_t>(n_bins));
  for (int i = 0; i < n_bins; ++i) {
    long long n = 0, hits = 0;
    for (const auto& p : partials) {
      n += p.n[static_cast<std::size_t>(i)];
      hits += p.hits[static_cast<std::size_t>(i)];
    }
    ProductMeasureBin& bin = bins[static_cast<std::size_t>(i)];
    bin.r_lo = static_cast<double>(i) / n_bins;
    bin.r_hi = static_cast<double>(i + 1) / n_bins;
    bin.estimate = finish_probability(0.5 * (bin.r_lo + bin.r_hi), 2, n, hits);
    bin.unreliable = n < 100;
  }
  return bins;
}

}  // namespace condvol
