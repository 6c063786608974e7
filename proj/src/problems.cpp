#include "sasa/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sasa {

namespace {

double sigmoid(double s) { return 1.0 / (1.0 + std::exp(-s)); }

// log(1 + exp(u)) without overflow.
double softplus(double u) {
  if (u > 0.0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

}  // namespace

QuadraticProblem::QuadraticProblem(std::vector<double> spectrum,
                                   std::vector<double> noise_var,
                                   std::uint64_t seed)
    : spectrum_(std::move(spectrum)), noise_var_(std::move(noise_var)), rng_(seed) {
  if (spectrum_.empty()) {
    throw std::invalid_argument("QuadraticProblem: empty spectrum");
  }
  if (noise_var_.size() != spectrum_.size()) {
    throw std::invalid_argument("QuadraticProblem: noise dimension mismatch");
  }
  for (double a : spectrum_) {
    if (!(a > 0.0)) {
      throw std::invalid_argument("QuadraticProblem: eigenvalues must be positive");
    }
  }
  for (double s2 : noise_var_) {
    if (!(s2 >= 0.0)) {
      throw std::invalid_argument("QuadraticProblem: noise variances must be >= 0");
    }
  }
  max_eigenvalue_ = *std::max_element(spectrum_.begin(), spectrum_.end());
}

ParamVector QuadraticProblem::stochastic_grad(const ParamVector& x) {
  require_same_dim(x, spectrum_, "QuadraticProblem::stochastic_grad");
  ParamVector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double noise = noise_var_[i] > 0.0 ? std::sqrt(noise_var_[i]) * normal_(rng_) : 0.0;
    g[i] = spectrum_[i] * x[i] + noise;
  }
  return g;
}

ParamVector QuadraticProblem::full_gradient(const ParamVector& x) const {
  require_same_dim(x, spectrum_, "QuadraticProblem::full_gradient");
  ParamVector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = spectrum_[i] * x[i];
  return g;
}

double QuadraticProblem::loss(const ParamVector& x) const {
  require_same_dim(x, spectrum_, "QuadraticProblem::loss");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += 0.5 * spectrum_[i] * x[i] * x[i];
  return acc;
}

LogRegData synth_logreg_data(std::size_t n_samples, std::size_t dim,
                             double separation, std::uint64_t seed) {
  if (n_samples < 2) throw std::invalid_argument("synth_logreg_data: n_samples < 2");
  if (dim < 1) throw std::invalid_argument("synth_logreg_data: dim < 1");
  if (!(separation >= 0.0)) {
    throw std::invalid_argument("synth_logreg_data: separation must be >= 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Random unit direction for the class offset.
  std::vector<double> u(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& ui : u) {
      ui = normal(rng);
      norm2 += ui * ui;
    }
  } while (norm2 == 0.0);
  const double inv_norm = 1.0 / std::sqrt(norm2);
  for (auto& ui : u) ui *= inv_norm;

  LogRegData data;
  data.dim = dim;
  data.features.resize(n_samples * dim);
  data.labels.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const int label = static_cast<int>(i % 2);  // balanced classes
    const double sign = label == 1 ? 1.0 : -1.0;
    data.labels[i] = label;
    for (std::size_t j = 0; j < dim; ++j) {
      data.features[i * dim + j] = sign * 0.5 * separation * u[j] + normal(rng);
    }
  }
  return data;
}

void export_logreg_csv(const LogRegData& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_logreg_csv: cannot open " + path);
  out.precision(17);
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << data.labels[i];
    const double* row = data.row(i);
    for (std::size_t j = 0; j < data.dim; ++j) out << ',' << row[j];
    out << '\n';
  }
}

LogRegData import_logreg_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("import_logreg_csv: cannot open " + path);
  LogRegData data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    if (!std::getline(row, cell, ',')) continue;
    data.labels.push_back(std::stoi(cell));
    std::size_t ncols = 0;
    while (std::getline(row, cell, ',')) {
      data.features.push_back(std::stod(cell));
      ++ncols;
    }
    if (data.dim == 0) {
      data.dim = ncols;
    } else if (ncols != data.dim) {
      throw std::runtime_error("import_logreg_csv: ragged row in " + path);
    }
  }
  if (data.dim == 0) throw std::runtime_error("import_logreg_csv: no data in " + path);
  return data;
}

LogRegProblem::LogRegProblem(LogRegData data, double lambda, std::size_t minibatch,
                             std::uint64_t seed)
    : data_(std::move(data)),
      lambda_(lambda),
      minibatch_(minibatch),
      rng_(seed),
      pick_(0, data_.size() > 0 ? data_.size() - 1 : 0) {
  if (data_.size() == 0) throw std::invalid_argument("LogRegProblem: empty dataset");
  if (!(lambda_ >= 0.0)) {
    throw std::invalid_argument("LogRegProblem: lambda must be >= 0");
  }
  if (minibatch_ < 1) throw std::invalid_argument("LogRegProblem: minibatch must be >= 1");
}

ParamVector LogRegProblem::stochastic_grad(const ParamVector& x) {
  if (x.size() != data_.dim) {
    throw std::invalid_argument("LogRegProblem::stochastic_grad: dimension mismatch");
  }
  ParamVector g(x.size(), 0.0);
  for (std::size_t b = 0; b < minibatch_; ++b) {
    const std::size_t i = pick_(rng_);
    const double* f = data_.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * f[j];
    const double resid = sigmoid(s) - data_.labels[i];
    for (std::size_t j = 0; j < x.size(); ++j) g[j] += resid * f[j];
  }
  const double inv_b = 1.0 / static_cast<double>(minibatch_);
  for (std::size_t j = 0; j < x.size(); ++j) g[j] = g[j] * inv_b + lambda_ * x[j];
  return g;
}

ParamVector LogRegProblem::full_gradient(const ParamVector& x) const {
  if (x.size() != data_.dim) {
    throw std::invalid_argument("LogRegProblem::full_gradient: dimension mismatch");
  }
  ParamVector g(x.size(), 0.0);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const double* f = data_.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * f[j];
    const double resid = sigmoid(s) - data_.labels[i];
    for (std::size_t j = 0; j < x.size(); ++j) g[j] += resid * f[j];
  }
  const double inv_n = 1.0 / static_cast<double>(data_.size());
  for (std::size_t j = 0; j < x.size(); ++j) g[j] = g[j] * inv_n + lambda_ * x[j];
  return g;
}

double LogRegProblem::loss(const ParamVector& x) const {
  if (x.size() != data_.dim) {
    throw std::invalid_argument("LogRegProblem::loss: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const double* f = data_.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * f[j];
    // -y log(sigmoid(s)) - (1-y) log(1 - sigmoid(s))
    acc += softplus(-s) + (1 - data_.labels[i]) * s;
  }
  return acc / static_cast<double>(data_.size()) + 0.5 * lambda_ * squared_norm(x);
}

double LogRegProblem::accuracy(const ParamVector& x) const {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const double* f = data_.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * f[j];
    const int pred = s >= 0.0 ? 1 : 0;
    if (pred == data_.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data_.size());
}

double check_unbiasedness(GradientOracle& oracle, const ParamVector& x,
                          std::size_t n_draws) {
  if (n_draws < 1) throw std::invalid_argument("check_unbiasedness: n_draws < 1");
  ParamVector mean(x.size(), 0.0);
  for (std::size_t t = 0; t < n_draws; ++t) {
    const ParamVector g = oracle.stochastic_grad(x);
    for (std::size_t j = 0; j < x.size(); ++j) mean[j] += g[j];
  }
  const ParamVector exact = oracle.full_gradient(x);
  const double inv = 1.0 / static_cast<double>(n_draws);
  double worst = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, std::abs(mean[j] * inv - exact[j]));
  }
  return worst;
}

}  // namespace sasa
