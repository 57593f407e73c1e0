#ifndef SHC_TESTS_STATS_UTIL_HPP
#define SHC_TESTS_STATS_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace shc_test {

// Survival function of the Kolmogorov distribution,
// Q(x) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 x^2}.
inline double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * x * x);
    q += (k % 2 ? term : -term);
    if (term < 1e-12) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

// Two-sample Kolmogorov-Smirnov p-value (asymptotic).
inline double ks_two_sample_p(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const size_t n = a.size(), m = b.size();
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < n && j < m) {
    const double x = std::min(a[i], b[j]);
    while (i < n && a[i] <= x) ++i;
    while (j < m && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n -
                              static_cast<double>(j) / m));
  }
  const double ne = static_cast<double>(n) * m / (n + m);
  return kolmogorov_sf(std::sqrt(ne) * d);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
  double s = 0.0, s2 = 0.0;
  for (double x : xs) {
    s += x;
    s2 += x * x;
  }
  const double n = static_cast<double>(xs.size());
  MeanSe r;
  r.mean = s / n;
  r.se = std::sqrt(std::max(0.0, s2 / n - r.mean * r.mean) / n);
  return r;
}

}  // namespace shc_test

#endif
