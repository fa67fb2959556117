#include "condvol/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace condvol {

namespace {

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper tail via modified Lentz continued fraction.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0)
    throw std::domain_error("regularized_gamma_p: invalid arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0)
    throw std::domain_error("regularized_gamma_q: invalid arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_sf(double x, int df) {
  if (df < 1) throw std::domain_error("chi2_sf: df must be >= 1");
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * df, 0.5 * x);
}

double chi2_quantile(double upper_tail_prob, int df) {
  if (!(upper_tail_prob > 0.0 && upper_tail_prob < 1.0))
    throw std::domain_error("chi2_quantile: probability must be in (0, 1)");
  // Bisection on the survival function; bracket grows until it contains the root.
  double lo = 0.0, hi = df + 10.0;
  while (chi2_sf(hi, df) > upper_tail_prob) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi2_sf(mid, df) > upper_tail_prob)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

KsResult ks_two_sample(std::span<const double> sample1, std::span<const double> sample2) {
  if (sample1.empty() || sample2.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> a(sample1.begin(), sample1.end());
  std::vector<double> b(sample2.begin(), sample2.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  KsResult res;
  res.statistic = d;
  res.n_effective = na * nb / (na + nb);
  res.p_value = kolmogorov_sf(std::sqrt(res.n_effective) * d);
  return res;
}

KsResult ks_one_sample(std::span<const double> sample,
                       const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::vector<double> a(sample.begin(), sample.end());
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
  }
  KsResult res;
  res.statistic = d;
  res.n_effective = n;
  res.p_value = kolmogorov_sf(std::sqrt(n) * d);
  return res;
}

Chi2FlatnessResult chi2_flatness(std::span<const double> values,
                                 std::span<const double> std_errors) {
  if (values.size() != std_errors.size() || values.size() < 2)
    throw std::invalid_argument("chi2_flatness: need >= 2 values with errors");
  double sw = 0.0, swx = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(std_errors[i] > 0.0))
      throw std::invalid_argument("chi2_flatness: standard errors must be positive");
    const double w = 1.0 / (std_errors[i] * std_errors[i]);
    sw += w;
    swx += w * values[i];
  }
  Chi2FlatnessResult res;
  res.weighted_mean = swx / sw;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double t = (values[i] - res.weighted_mean) / std_errors[i];
    res.statistic += t * t;
  }
  res.df = static_cast<int>(values.size()) - 1;
  res.p_value = chi2_sf(res.statistic, res.df);
  return res;
}

Chi2FlatnessResult chi2_counts(std::span<const double> observed,
                               std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw std::invalid_argument("chi2_counts: need >= 2 bins");
  Chi2FlatnessResult res;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0))
      throw std::invalid_argument("chi2_counts: expected counts must be positive");
    const double d = observed[i] - expected[i];
    res.statistic += d * d / expected[i];
  }
  res.df = static_cast<int>(observed.size()) - 1;
  res.p_value = chi2_sf(res.statistic, res.df);
  return res;
}

LineFit weighted_least_squares(std::span<const double> x, std::span<const double> y,
                               std::span<const double> weights) {
  if (x.size() != y.size() || x.size() != weights.size() || x.size() < 2)
    throw std::invalid_argument("weighted_least_squares: need >= 2 points");
  double sw = 0, swx = 0, swy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += weights[i];
    swx += weights[i] * x[i];
    swy += weights[i] * y[i];
  }
  const double xbar = swx / sw;
  const double ybar = swy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - xbar;
    sxx += weights[i] * dx * dx;
    sxy += weights[i] * dx * (y[i] - ybar);
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("weighted_least_squares: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  // With weights = inverse variances the slope variance is 1/Sxx.
  fit.slope_std_error = std::sqrt(1.0 / sxx);
  return fit;
}

void CompensatedSum::add(double value) {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value))
    comp_ += (sum_ - t) + value;
  else
    comp_ += (value - t) + sum_;
  sum_ = t;
}

}  // namespace condvol
