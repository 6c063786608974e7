#ifndef SASA_HARNESS_HPP
#define SASA_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sasa/inference.hpp"
#include "sasa/problems.hpp"
#include "sasa/sgm.hpp"
#include "sasa/stationarity.hpp"

namespace sasa {

enum class TestKind {
  deterministic,
  iid,
  markov,
};

struct SasaConfig {
  double alpha0 = 1.0;
  double beta = 0.9;
  double delta = 0.02;
  double gamma = 0.2;
  double zeta = 0.1;
  std::uint64_t period = 1000;  // SGM iterations between tests (M)
  VarianceMethod estimator = VarianceMethod::batch_means;
  TestKind test = TestKind::markov;
  StatPairing pairing = StatPairing::current_direction;
  std::uint64_t max_iterations = 100000;
  std::uint64_t seed = 0;
};

void validate_config(const SasaConfig& cfg);  // throws std::invalid_argument

struct AdamConfig {
  double alpha0 = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct TraceRow {
  std::uint64_t iter = 0;
  double loss = 0.0;
  double alpha = 0.0;
  std::size_t n_samples = 0;
  double zbar = 0.0;
  double vbar = 0.0;
  double sigma_hat = 0.0;  // NaN when no variance estimate applies
  double lci = 0.0;
  double uci = 0.0;
  bool dropped = false;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  std::vector<std::uint64_t> drop_iters;
  std::vector<double> alpha_ladder;  // alpha values in effect, in order
  double final_loss = 0.0;
  ParamVector final_x;
  std::uint64_t seed = 0;
  bool aborted = false;
  std::string abort_reason;
};

// The SASA loop: phases of `period` SGM steps with per-step (z, v)
// collection, a stationarity test after each full phase, and on a firing
// test alpha <- zeta * alpha with both queues reset. A trailing partial
// phase is never tested. Starts from x0 = 0 when x0 is empty.
RunTrace run_sasa(GradientOracle& oracle, const SasaConfig& cfg,
                  ParamVector x0 = {});

enum class BaselineKind {
  sgm_const,
  sgm_poly,
  sgm_hand,
  adam,
};

struct BaselineParams {
  StepSizeRule rule = ConstantRule{1.0};  // SGM baselines
  AdamConfig adam;                        // Adam baseline
  double beta = 0.9;                      // SGM momentum
};

// Same trace schema as run_sasa; the statistics columns are filled in but
// never acted on. For Adam the first-moment vector stands in for d.
RunTrace run_baseline(GradientOracle& oracle, BaselineKind kind,
                      const BaselineParams& params, const SasaConfig& cfg,
                      ParamVector x0 = {});

using ProblemFactory =
    std::function<std::unique_ptr<GradientOracle>(std::uint64_t seed)>;

struct VarianceExperimentResult {
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint64_t> first_drop_iters;  // max_iterations if no drop
  std::vector<double> final_losses;
  double first_drop_stddev = 0.0;
  bool degenerate = false;  // fewer than 2 seeds: stddev reported as 0
};

// Replicates a run per seed at fixed test period and reports the spread
// of the first drop iteration across seeds.
VarianceExperimentResult run_variance_experiment(const ProblemFactory& factory,
                                                 TestKind test,
                                                 std::uint64_t period,
                                                 double delta, double gamma,
                                                 std::span<const std::uint64_t> seeds,
                                                 const SasaConfig& base);

enum class SweepAxis {
  delta,
  gamma,
  zeta,
};

struct SweepResult {
  SweepAxis axis;
  std::vector<double> values;
  std::vector<RunTrace> traces;  // one per value, shared seed
};

// Validates every value for the axis before any run starts.
SweepResult run_sweep(const ProblemFactory& factory, const SasaConfig& base,
                      SweepAxis axis, std::span<const double> values);

std::uint64_t first_drop_or_max(const RunTrace& trace, std::uint64_t max_iterations);

}  // namespace sasa

#endif  // SASA_HARNESS_HPP
