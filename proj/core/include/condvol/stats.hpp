#pragma once

#include <functional>
#include <span>
#include <vector>

namespace condvol {

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x),
// series expansion for x < a + 1 and Lentz continued fraction otherwise.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Chi-square survival function and quantile (upper tail).
double chi2_sf(double x, int df);
double chi2_quantile(double upper_tail_prob, int df);

// Kolmogorov distribution survival function Q(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_sf(double lambda);

struct KsResult {
  double statistic = 0;
  double p_value = 1;
  double n_effective = 0;
};

// Two-sample Kolmogorov-Smirnov with asymptotic p-value.
KsResult ks_two_sample(std::span<const double> sample1, std::span<const double> sample2);

// One-sample KS against a CDF.
KsResult ks_one_sample(std::span<const double> sample,
                       const std::function<double(double)>& cdf);

struct Chi2FlatnessResult {
  double statistic = 0;
  int df = 0;
  double p_value = 1;
  double weighted_mean = 0;
};

// Tests H0: all values share a common mean, given per-value standard errors.
Chi2FlatnessResult chi2_flatness(std::span<const double> values,
                                 std::span<const double> std_errors);

// Pearson chi-square of observed counts against expected counts; df = bins - 1.
Chi2FlatnessResult chi2_counts(std::span<const double> observed,
                               std::span<const double> expected);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double slope_std_error = 0;
};

// Weighted least squares y ~ intercept + slope * x with inverse-variance weights.
LineFit weighted_least_squares(std::span<const double> x, std::span<const double> y,
                               std::span<const double> weights);

// Neumaier-compensated accumulator; summation order independent to double
// precision for the chunk reductions.
class CompensatedSum {
 public:
  void add(double value);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

}  // namespace condvol
