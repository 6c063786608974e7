#ifndef SASA_INFERENCE_HPP
#define SASA_INFERENCE_HPP

#include <cstddef>
#include <optional>
#include <span>

#include "sasa/stationarity.hpp"

namespace sasa {

enum class VarianceMethod {
  iid,
  batch_means,
  overlapping_batch_means,
};

struct VarianceEstimate {
  double sigma2 = 0.0;
  std::size_t dof = 0;
  VarianceMethod method = VarianceMethod::iid;
};

// Unbiased sample variance, dof N-1. Nullopt when N < 2.
std::optional<VarianceEstimate> var_iid(std::span<const double> samples);

// Batch-means estimator over b consecutive batches of size m taken from
// the most recent b*m samples (excess is dropped from the oldest end):
//   sigma2 = m/(b-1) * sum_j (mean_j - mean_all)^2,       dof b-1,
// with mean_all the mean of all N samples passed in. Nullopt when b < 2
// or b*m > N.
std::optional<VarianceEstimate> var_batch_means(std::span<const double> samples,
                                                std::size_t b, std::size_t m);

// Overlapping batch means over the N-b+1 windows of size b:
//   sigma2 = N*b / ((N-b)(N-b+1)) * sum_j (window_mean_j - mean_all)^2,
// dof N-b. Nullopt unless 2 <= b <= N-1.
std::optional<VarianceEstimate> var_olbm(std::span<const double> samples,
                                         std::size_t b);

// Regularized incomplete beta function I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double dof);

// Inverse CDF of Student's t, by bracketed bisection of the CDF written
// through the regularized incomplete beta function. p in (0,1), dof >= 1.
double t_quantile(double p, double dof);

// |zbar| < delta * vbar. With vbar = 0 the acceptance band is empty and
// the test never fires.
bool test_deterministic(double zbar, double vbar, double delta);

// Outcome of one stationarity test on the retained sample window.
struct TestReport {
  double zbar = 0.0;
  double vbar = 0.0;
  std::size_t n = 0;
  std::optional<VarianceEstimate> sigma;  // absent for the deterministic test
  double t_star = 0.0;
  double lci = 0.0;
  double uci = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  bool drop = false;
  bool insufficient = false;  // not enough samples; drop forced to false
};

// The Markov-chain t-test: variance of zbar's sampling distribution from
// the chosen estimator (batch means by default, b = m = floor(sqrt(N))),
// confidence interval zbar -/+ t*_{1-gamma/2} sigma/sqrt(N), drop when the
// whole interval sits strictly inside (-delta vbar, delta vbar).
TestReport test_markov(const HalfQueue& zq, const HalfQueue& vq, double delta,
                       double gamma,
                       VarianceMethod method = VarianceMethod::batch_means);

// Same test pretending the samples are i.i.d. (sample variance, dof N-1).
TestReport test_iid(const HalfQueue& zq, const HalfQueue& vq, double delta,
                    double gamma);

}  // namespace sasa

#endif  // SASA_INFERENCE_HPP
