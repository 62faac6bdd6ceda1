#include <algorithm>
#include <cmath>

#include "qca/errors.hpp"
#include "qca/refdist.hpp"

namespace qca {

namespace {

constexpr std::size_t kMinSamples = 50;

// Asymptotic Kolmogorov CDF, K(x) = 1 - 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_cdf(double x) {
  if (x <= 0.0) return 0.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return 1.0 - 2.0 * sum;
}

void check_alpha(double alpha) {
  if (alpha != 0.01 && alpha != 0.05) throw InvalidArgument("alpha must be 0.01 or 0.05");
}

}  // namespace

double kolmogorov_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  double lo = 0.2, hi = 4.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_cdf(mid) < 1.0 - alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

GofResult ks_test(std::span<const double> samples, const ReferencePdf& ref, double alpha) {
  check_alpha(alpha);
  if (samples.size() < kMinSamples) throw InvalidArgument("KS test needs at least 50 samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = ref.cdf(sorted[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  GofResult r;
  r.statistic = d;
  r.sample_size = sorted.size();
  r.alpha = alpha;
  r.critical_value = kolmogorov_critical(alpha) / std::sqrt(n);
  r.reject = r.statistic > r.critical_value;
  return r;
}

GofResult ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha) {
  check_alpha(alpha);
  if (a.size() < kMinSamples || b.size() < kMinSamples) throw InvalidArgument("KS test needs at least 50 samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  GofResult r;
  r.statistic = d;
  r.sample_size = std::min(x.size(), y.size());
  r.alpha = alpha;
  r.critical_value = kolmogorov_critical(alpha) * std::sqrt((nx + ny) / (nx * ny));
  r.reject = r.statistic > r.critical_value;
  return r;
}

}  // namespace qca
