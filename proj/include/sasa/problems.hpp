#ifndef SASA_PROBLEMS_HPP
#define SASA_PROBLEMS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sasa/param_vector.hpp"

namespace sasa {

// A stochastic gradient source whose draws are Markovian and unbiased:
// conditioned on the query point, E[stochastic_grad(x)] = full_gradient(x).
// Exact loss and gradient are exposed for diagnostics.
class GradientOracle {
 public:
  virtual ~GradientOracle() = default;

  virtual std::size_t dim() const = 0;
  virtual ParamVector stochastic_grad(const ParamVector& x) = 0;
  virtual ParamVector full_gradient(const ParamVector& x) const = 0;
  virtual double loss(const ParamVector& x) const = 0;
};

// F(x) = (1/2) x^T A x with diagonal A = diag(spectrum) and additive
// gradient noise xi ~ N(0, diag(noise_var)), drawn fresh per call.
class QuadraticProblem final : public GradientOracle {
 public:
  QuadraticProblem(std::vector<double> spectrum, std::vector<double> noise_var,
                   std::uint64_t seed);

  std::size_t dim() const override { return spectrum_.size(); }
  ParamVector stochastic_grad(const ParamVector& x) override;
  ParamVector full_gradient(const ParamVector& x) const override;
  double loss(const ParamVector& x) const override;

  double max_eigenvalue() const { return max_eigenvalue_; }
  const std::vector<double>& spectrum() const { return spectrum_; }
  const std::vector<double>& noise_var() const { return noise_var_; }

 private:
  std::vector<double> spectrum_;
  std::vector<double> noise_var_;
  double max_eigenvalue_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Row-major sample matrix with {0,1} labels.
struct LogRegData {
  std::size_t dim = 0;
  std::vector<double> features;  // n * dim
  std::vector<int> labels;       // n

  std::size_t size() const { return labels.size(); }
  const double* row(std::size_t i) const { return features.data() + i * dim; }
};

// Two Gaussian clusters at +/- (separation/2) u for a random unit vector u,
// labels by cluster, balanced via interleaving. Deterministic given seed.
LogRegData synth_logreg_data(std::size_t n_samples, std::size_t dim,
                             double separation, std::uint64_t seed);

// One row per sample: label, then features.
void export_logreg_csv(const LogRegData& data, const std::string& path);
LogRegData import_logreg_csv(const std::string& path);

// L2-regularized logistic regression with minibatches drawn i.i.d.
// uniformly with replacement. Labels in {0,1}, sigmoid link; the weight
// decay term lambda*x is folded into every gradient.
class LogRegProblem final : public GradientOracle {
 public:
  LogRegProblem(LogRegData data, double lambda, std::size_t minibatch,
                std::uint64_t seed);

  std::size_t dim() const override { return data_.dim; }
  ParamVector stochastic_grad(const ParamVector& x) override;
  ParamVector full_gradient(const ParamVector& x) const override;
  double loss(const ParamVector& x) const override;

  const LogRegData& data() const { return data_; }
  double lambda() const { return lambda_; }

  // Fraction of samples whose predicted class matches the label.
  double accuracy(const ParamVector& x) const;

 private:
  LogRegData data_;
  double lambda_;
  std::size_t minibatch_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<std::size_t> pick_;
};

// Max-abs deviation of the n_draws-average stochastic gradient from the
// exact gradient at x.
double check_unbiasedness(GradientOracle& oracle, const ParamVector& x,
                          std::size_t n_draws);

}  // namespace sasa

#endif  // SASA_PROBLEMS_HPP
