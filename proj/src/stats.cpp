#include "survcor/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "survcor/errors.hpp"

namespace survcor {

SeriesStats series_stats(std::span<const double> values) {
  const auto n = values.size();
  if (n == 0) {
    throw InsufficientDataError("series_stats: empty series");
  }
  double sum = 0.0;
  for (const double v : values) {
    sum += v;
  }
  const double mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (const double v : values) {
    const double d = v - mean;
    sq += d * d;
  }
  return {mean, std::sqrt(sq / static_cast<double>(n))};
}

SummaryStats describe(std::span<const double> values) {
  const auto n = values.size();
  if (n == 0) {
    throw InsufficientDataError("describe: no values");
  }
  SummaryStats out;
  out.count = n;
  double sum = 0.0;
  for (const double v : values) {
    sum += v;
  }
  out.mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (const double v : values) {
    const double d = v - out.mean;
    sq += d * d;
  }
  out.sd = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  out.min = sorted.front();
  out.max = sorted.back();
  const auto mid = n / 2;
  out.median = (n % 2 == 1) ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
  return out;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DomainError("pearson: length mismatch (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  }
  const auto n = a.size();
  if (n < 2) {
    throw InsufficientDataError("pearson: need at least 2 pairs");
  }
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_a += a[i];
    sum_b += b[i];
  }
  const double mean_a = sum_a / static_cast<double>(n);
  const double mean_b = sum_b / static_cast<double>(n);
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw InsufficientDataError("pearson: zero variance");
  }
  return cov / std::sqrt(var_a * var_b);
}

namespace {

double rational(const double r, const double* num, const double* den) {
  // Degree-7 numerator and denominator, highest coefficient first.
  double p = num[0];
  double q = den[0];
  for (int i = 1; i < 8; ++i) {
    p = p * r + num[i];
    q = q * r + den[i];
  }
  return p / q;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: p must lie in (0, 1)");
  }

  // Wichura (1988), algorithm AS 241, PPND16 coefficient set.
  static constexpr double kA[8] = {
      2.5090809287301226727e+3, 3.3430575583588128105e+4,
      6.7265770927008700853e+4, 4.5921953931549871457e+4,
      1.3731693765509461125e+4, 1.9715909503065514427e+3,
      1.3314166789178437745e+2, 3.3871328727963666080e+0};
  static constexpr double kB[8] = {
      5.2264952788528545610e+3, 2.8729085735721942674e+4,
      3.9307895800092710610e+4, 2.1213794301586595867e+4,
      5.3941960214247511077e+3, 6.8718700749205790830e+2,
      4.2313330701600911252e+1, 1.0};
  static constexpr double kC[8] = {
      7.74545014278341407640e-4, 2.27238449892691845833e-2,
      2.41780725177450611770e-1, 1.27045825245236838258e+0,
      3.64784832476320460504e+0, 5.76949722146069140550e+0,
      4.63033784615654529590e+0, 1.42343711074968357734e+0};
  static constexpr double kD[8] = {
      1.05075007164441684324e-9, 5.47593808499534494600e-4,
      1.51986665636164571966e-2, 1.48103976427480074590e-1,
      6.89767334985100004550e-1, 1.67638483018380384940e+0,
      2.05319162663775882187e+0, 1.0};
  static constexpr double kE[8] = {
      2.01033439929228813265e-7, 2.71155556874348757815e-5,
      1.24266094738807843860e-3, 2.65321895265761230930e-2,
      2.96560571828504891230e-1, 1.78482653991729133580e+0,
      5.46378491116411436990e+0, 6.65790464350110377720e+0};
  static constexpr double kF[8] = {
      2.04426310338993978564e-15, 1.42151175831644588870e-7,
      1.84631831751005468180e-5,  7.86869131145613259100e-4,
      1.48753612908506148525e-2,  1.36929880922735805310e-1,
      5.99832206555887937690e-1,  1.0};

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * rational(r, kA, kB);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double z;
  if (r <= 5.0) {
    z = rational(r - 1.6, kC, kD);
  } else {
    z = rational(r - 5.0, kE, kF);
  }
  return q < 0.0 ? -z : z;
}

}  // namespace survcor
