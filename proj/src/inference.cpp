#include "sasa/inference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sasa {

namespace {

double compensated_mean(std::span<const double> samples) {
  double sum = 0.0, comp = 0.0;
  for (double v : samples) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return (sum + comp) / static_cast<double>(samples.size());
}

// Continued fraction for the incomplete beta function (Lentz's method).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("regularized_incomplete_beta: continued fraction failed");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("regularized_incomplete_beta: a, b must be positive");
  }
  if (x < 0.0 || x > 1.0) {
    throw std::invalid_argument("regularized_incomplete_beta: x outside [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
  if (!(dof >= 1.0)) throw std::invalid_argument("student_t_cdf: dof must be >= 1");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * dof, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double t_quantile(double p, double dof) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("t_quantile: p must lie in (0, 1)");
  }
  if (!(dof >= 1.0)) throw std::invalid_argument("t_quantile: dof must be >= 1");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -t_quantile(1.0 - p, dof);

  double lo = 0.0;
  double hi = 1.0;
  while (student_t_cdf(hi, dof) < p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("t_quantile: bracket overflow");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (student_t_cdf(mid, dof) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<VarianceEstimate> var_iid(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) return std::nullopt;
  const double mean = compensated_mean(samples);
  double acc = 0.0;
  for (double v : samples) {
    const double dev = v - mean;
    acc += dev * dev;
  }
  return VarianceEstimate{acc / static_cast<double>(n - 1), n - 1, VarianceMethod::iid};
}

std::optional<VarianceEstimate> var_batch_means(std::span<const double> samples,
                                                std::size_t b, std::size_t m) {
  const std::size_t n = samples.size();
  if (b < 2 || m < 1 || b * m > n) return std::nullopt;
  const double mean_all = compensated_mean(samples);
  // Keep the most recent b*m samples; older excess is dropped.
  const std::size_t offset = n - b * m;
  double acc = 0.0;
  for (std::size_t j = 0; j < b; ++j) {
    double batch_sum = 0.0;
    const std::size_t base = offset + j * m;
    for (std::size_t i = 0; i < m; ++i) batch_sum += samples[base + i];
    const double dev = batch_sum / static_cast<double>(m) - mean_all;
    acc += dev * dev;
  }
  const double sigma2 = static_cast<double>(m) / static_cast<double>(b - 1) * acc;
  return VarianceEstimate{sigma2, b - 1, VarianceMethod::batch_means};
}

std::optional<VarianceEstimate> var_olbm(std::span<const double> samples, std::size_t b) {
  const std::size_t n = samples.size();
  if (b < 2 || b + 1 > n) return std::nullopt;
  const double mean_all = compensated_mean(samples);
  double window_sum = 0.0;
  for (std::size_t i = 0; i < b; ++i) window_sum += samples[i];
  double acc = 0.0;
  const double inv_b = 1.0 / static_cast<double>(b);
  for (std::size_t j = 0;; ++j) {
    const double dev = window_sum * inv_b - mean_all;
    acc += dev * dev;
    if (j == n - b) break;
    window_sum += samples[j + b] - samples[j];
  }
  const double nb = static_cast<double>(n - b);
  const double scale = static_cast<double>(n) * static_cast<double>(b) / (nb * (nb + 1.0));
  return VarianceEstimate{scale * acc, n - b, VarianceMethod::overlapping_batch_means};
}

bool test_deterministic(double zbar, double vbar, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("test_deterministic: delta <= 0");
  if (!(vbar >= 0.0)) throw std::invalid_argument("test_deterministic: vbar < 0");
  return std::abs(zbar) < delta * vbar;
}

namespace {

std::size_t isqrt_floor(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while ((r + 1) * (r + 1) <= n) ++r;
  while (r * r > n) --r;
  return r;
}

TestReport run_t_test(const HalfQueue& zq, const HalfQueue& vq, double delta,
                      double gamma, VarianceMethod method) {
  if (!(delta > 0.0)) throw std::invalid_argument("stationarity test: delta <= 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("stationarity test: gamma outside (0, 1]");
  }
  TestReport report;
  report.delta = delta;
  report.gamma = gamma;

  const auto means = running_means(zq, vq);
  if (!means) {
    report.insufficient = true;
    report.sigma.reset();
    report.zbar = report.vbar = std::numeric_limits<double>::quiet_NaN();
    report.lci = report.uci = std::numeric_limits<double>::quiet_NaN();
    report.t_star = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.zbar = means->zbar;
  report.vbar = means->vbar;
  report.n = means->n;

  const auto samples = zq.values();
  std::optional<VarianceEstimate> sigma;
  switch (method) {
    case VarianceMethod::iid:
      sigma = var_iid(samples);
      break;
    case VarianceMethod::batch_means: {
      const std::size_t side = isqrt_floor(samples.size());
      sigma = var_batch_means(samples, side, side);
      break;
    }
    case VarianceMethod::overlapping_batch_means:
      sigma = var_olbm(samples, isqrt_floor(samples.size()));
      break;
  }
  if (!sigma) {
    report.insufficient = true;
    report.lci = report.uci = report.zbar;
    report.t_star = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.sigma = sigma;
  report.t_star = t_quantile(1.0 - 0.5 * gamma, static_cast<double>(sigma->dof));
  const double half_width = report.t_star * std::sqrt(sigma->sigma2) /
                            std::sqrt(static_cast<double>(report.n));
  report.lci = report.zbar - half_width;
  report.uci = report.zbar + half_width;
  const double band = delta * report.vbar;
  report.drop = report.lci > -band && report.uci < band;
  return report;
}

}  // namespace

TestReport test_markov(const HalfQueue& zq, const HalfQueue& vq, double delta,
                       double gamma, VarianceMethod method) {
  return run_t_test(zq, vq, delta, gamma, method);
}

TestReport test_iid(const HalfQueue& zq, const HalfQueue& vq, double delta,
                    double gamma) {
  return run_t_test(zq, vq, delta, gamma, VarianceMethod::iid);
}

}  // namespace sasa
