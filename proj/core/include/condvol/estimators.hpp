#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "condvol/samplers.hpp"
#include "condvol/statespace.hpp"

namespace condvol {

// Seeding and parallelism for a chunked estimator run. Workers draw from
// streams (seed, task_id * 2^32 + chunk); results do not depend on the thread
// count, only on (seed, task_id, sample count).
struct RunContext {
  std::uint64_t seed = 0;
  std::uint64_t task_id = 0;
  int threads = 1;
  double tol = kPsdTol;  // positivity tolerance for acceptance and PPT checks
};

struct VolumeEstimate {
  double value = 0;
  double std_error = 0;
  long long n_samples = 0;
  long long n_accepted = 0;
  MetricConvention convention = MetricConvention::PaperUniform;
  int dims = 0;   // sampled cube dimension
  double r = 0;
};

enum class ProbabilityLabel { Separable, PositivePartialTranspose };

struct ProbabilityEstimate {
  double value = 0;
  double std_error = 0;
  long long n_samples = 0;
  long long n_hits = 0;
  double r = 0;
  ProbabilityLabel label = ProbabilityLabel::Separable;
  bool low_count = false;  // fewer than 10 hits
};

struct RadiusHistogram {
  int m = 2;
  long long n_samples = 0;
  std::vector<double> bin_edges;    // bins + 1 edges on [0, 1]
  std::vector<long long> counts;    // per bin
  std::vector<double> envelope;     // expected counts from the conjectured density
};

struct ExponentFit {
  double exponent = 0;
  double std_error = 0;
  int bins_used = 0;
};

struct IntegrationResult {
  double value = 0;
  double std_error = 0;
};

struct ProductMeasureBin {
  double r_lo = 0;
  double r_hi = 0;
  ProbabilityEstimate estimate;
  bool unreliable = false;  // fewer than 100 samples in the bin
};

// Rejection estimate of the conditioned X volume at radius r (six slice
// coordinates uniform in [-1, 1]^6).
VolumeEstimate estimate_x_volume(double r, long long n_samples,
                                 MetricConvention convention, const RunContext& ctx);

// Rejection estimate of the integral over r of the conditioned X volume
// (a3 uniform in [0, 1] plus the six slice coordinates).
VolumeEstimate estimate_x_total_volume(long long n_samples, MetricConvention convention,
                                       const RunContext& ctx);

// Rejection estimate of the conditioned 2 x m volume at radius r.
VolumeEstimate estimate_conditioned_volume(double r, int m, long long n_samples,
                                           MetricConvention convention,
                                           const RunContext& ctx);

// PPT fraction in the conditioned space at radius r, via the fiber sampler.
// r = 1 returns the exact value 1 without sampling.
ProbabilityEstimate estimate_psep(double r, int m, long long n_samples,
                                  const RunContext& ctx);

// PPT fraction among accepted X rejection proposals; n_samples in the result
// is the number of accepted states.
ProbabilityEstimate estimate_x_psep(double r, long long n_proposals,
                                    const RunContext& ctx);

// Same fraction from direct draws of the conditioned X body.
ProbabilityEstimate estimate_x_psep_direct(double r, long long n_samples,
                                           const RunContext& ctx);

// Histogram of the reduced-state Bloch radius over HS-uniform 2m x 2m states,
// with the conjectured envelope ~ r^2 (1-r^2)^{2(m^2-1)} normalized to the
// total count.
RadiusHistogram radius_histogram(int m, long long n_samples, int n_bins,
                                 const RunContext& ctx);

// Weighted least-squares exponent of the histogram envelope: slope of
// log(count / (4 pi r_c^2)) against log(1 - r_c^2) over nonempty bins with
// r_c < 0.9. Throws if fewer than 10 such bins exist.
ExponentFit fit_envelope_exponent(const RadiusHistogram& hist);

// Conjectured conditioned volume V(0) (1 - r^2)^{2(m^2-1)} and its prefactor,
// evaluated in log space.
double conjectured_volume(double r, int m);
double conjectured_v0(int m);

// Trapezoidal integral of p(r) over [0, 1], treating p as flat between the
// last grid point and r = 1 (the endpoint is measure-zero). Errors propagate
// in quadrature. The grid must be sorted, start at r = 0 and stay below 1.
IntegrationResult integrate_psep(
    const std::vector<std::pair<double, ProbabilityEstimate>>& grid);

// Binned PPT fraction of the reduced-radius under the simplex x Haar product
// measure on 4 x 4 states; bins with fewer than 100 samples are unreliable.
std::vector<ProductMeasureBin> estimate_psep_product_measure(long long n_samples,
                                                             int n_bins,
                                                             const RunContext& ctx);

}  // namespace condvol
