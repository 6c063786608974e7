#include "sasa/harness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sasa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kLossCadence = 100;

TestReport evaluate_test(const HalfQueue& zq, const HalfQueue& vq,
                         const SasaConfig& cfg) {
  switch (cfg.test) {
    case TestKind::markov:
      return test_markov(zq, vq, cfg.delta, cfg.gamma, cfg.estimator);
    case TestKind::iid:
      return test_iid(zq, vq, cfg.delta, cfg.gamma);
    case TestKind::deterministic: {
      TestReport report;
      report.delta = cfg.delta;
      report.gamma = cfg.gamma;
      const auto means = running_means(zq, vq);
      if (!means) {
        report.insufficient = true;
        report.zbar = report.vbar = kNaN;
        report.lci = report.uci = kNaN;
        report.t_star = kNaN;
        return report;
      }
      report.zbar = means->zbar;
      report.vbar = means->vbar;
      report.n = means->n;
      report.t_star = 0.0;
      report.lci = report.uci = report.zbar;
      report.drop = test_deterministic(report.zbar, report.vbar, cfg.delta);
      return report;
    }
  }
  throw std::logic_error("evaluate_test: unknown test kind");
}

TraceRow stats_row(std::uint64_t iter, double loss, double alpha,
                   const HalfQueue& zq, const HalfQueue& vq) {
  TraceRow row;
  row.iter = iter;
  row.loss = loss;
  row.alpha = alpha;
  row.n_samples = zq.size();
  const auto means = running_means(zq, vq);
  row.zbar = means ? means->zbar : kNaN;
  row.vbar = means ? means->vbar : kNaN;
  row.sigma_hat = kNaN;
  row.lci = kNaN;
  row.uci = kNaN;
  row.dropped = false;
  return row;
}

TraceRow report_row(std::uint64_t iter, double loss, double alpha,
                    const TestReport& report) {
  TraceRow row;
  row.iter = iter;
  row.loss = loss;
  row.alpha = alpha;
  row.n_samples = report.n;
  row.zbar = report.zbar;
  row.vbar = report.vbar;
  row.sigma_hat = report.sigma ? std::sqrt(report.sigma->sigma2) : kNaN;
  row.lci = report.lci;
  row.uci = report.uci;
  row.dropped = report.drop;
  return row;
}

}  // namespace

void validate_config(const SasaConfig& cfg) {
  if (!(cfg.alpha0 > 0.0) || !std::isfinite(cfg.alpha0)) {
    throw std::invalid_argument("config: alpha0 must be positive and finite");
  }
  if (!(cfg.beta >= 0.0 && cfg.beta < 1.0)) {
    throw std::invalid_argument("config: beta must lie in [0, 1)");
  }
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("config: delta must be positive");
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) {
    throw std::invalid_argument("config: gamma must lie in (0, 1]");
  }
  if (!(cfg.zeta > 0.0 && cfg.zeta < 1.0)) {
    throw std::invalid_argument("config: zeta must lie in (0, 1)");
  }
  if (cfg.period < 1) throw std::invalid_argument("config: period must be >= 1");
}

RunTrace run_sasa(GradientOracle& oracle, const SasaConfig& cfg, ParamVector x0) {
  validate_config(cfg);
  if (x0.empty()) x0.assign(oracle.dim(), 0.0);

  SgmState state = make_sgm_state(std::move(x0), cfg.alpha0, cfg.beta);
  HalfQueue zq, vq;
  RunTrace trace;
  trace.seed = cfg.seed;
  trace.alpha_ladder.push_back(cfg.alpha0);

  try {
    for (std::uint64_t iter = 1; iter <= cfg.max_iterations; ++iter) {
      const ParamVector g = oracle.stochastic_grad(state.x);
      const double xg = dot(state.x, g);
      const double d2_prev = cfg.pairing == StatPairing::previous_direction
                                 ? squared_norm(state.d)
                                 : 0.0;
      state = sgm_step(std::move(state), g);
      const double d2 = cfg.pairing == StatPairing::previous_direction
                            ? d2_prev
                            : squared_norm(state.d);
      const StatPair zv = make_stat_pair(xg, d2, state.alpha, state.beta);
      zq.push(zv.z);
      vq.push(zv.v);

      if (iter % cfg.period == 0) {
        const TestReport report = evaluate_test(zq, vq, cfg);
        trace.rows.push_back(report_row(iter, oracle.loss(state.x), state.alpha, report));
        if (report.drop) {
          state.alpha *= cfg.zeta;
          trace.alpha_ladder.push_back(state.alpha);
          trace.drop_iters.push_back(iter);
          reset_all(zq, vq);
        }
      } else if (iter % kLossCadence == 0) {
        trace.rows.push_back(
            stats_row(iter, oracle.loss(state.x), state.alpha, zq, vq));
      }
    }
    trace.final_loss = oracle.loss(state.x);
    if (!std::isfinite(trace.final_loss)) {
      throw NumericalError("run_sasa: non-finite loss at end of run");
    }
  } catch (const NumericalError& err) {
    trace.aborted = true;
    trace.abort_reason = err.what();
    trace.final_loss = kNaN;
  }
  trace.final_x = std::move(state.x);
  return trace;
}

RunTrace run_baseline(GradientOracle& oracle, BaselineKind kind,
                      const BaselineParams& params, const SasaConfig& cfg,
                      ParamVector x0) {
  validate_config(cfg);
  if (x0.empty()) x0.assign(oracle.dim(), 0.0);

  RunTrace trace;
  trace.seed = cfg.seed;

  if (kind == BaselineKind::adam) {
    const AdamConfig& ac = params.adam;
    if (!(ac.alpha0 > 0.0)) throw std::invalid_argument("adam: alpha0 must be positive");
    if (!(ac.beta1 >= 0.0 && ac.beta1 < 1.0) || !(ac.beta2 >= 0.0 && ac.beta2 < 1.0)) {
      throw std::invalid_argument("adam: moment coefficients must lie in [0, 1)");
    }
    const std::size_t n = x0.size();
    ParamVector x = std::move(x0), m(n, 0.0), v(n, 0.0);
    HalfQueue zq, vq;
    double beta1_pow = 1.0, beta2_pow = 1.0;
    try {
      for (std::uint64_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        const ParamVector g = oracle.stochastic_grad(x);
        require_all_finite(g, "gradient");
        const double xg = dot(x, g);
        beta1_pow *= ac.beta1;
        beta2_pow *= ac.beta2;
        for (std::size_t i = 0; i < n; ++i) {
          m[i] = ac.beta1 * m[i] + (1.0 - ac.beta1) * g[i];
          v[i] = ac.beta2 * v[i] + (1.0 - ac.beta2) * g[i] * g[i];
          const double mhat = m[i] / (1.0 - beta1_pow);
          const double vhat = v[i] / (1.0 - beta2_pow);
          x[i] -= ac.alpha0 * mhat / (std::sqrt(vhat) + ac.epsilon);
        }
        // Diagnostic analogue only: the first moment stands in for d.
        const StatPair zv = make_stat_pair(xg, squared_norm(m), ac.alpha0, ac.beta1);
        zq.push(zv.z);
        vq.push(zv.v);
        if (iter % cfg.period == 0) {
          const TestReport report = evaluate_test(zq, vq, cfg);
          trace.rows.push_back(report_row(iter, oracle.loss(x), ac.alpha0, report));
        } else if (iter % kLossCadence == 0) {
          trace.rows.push_back(stats_row(iter, oracle.loss(x), ac.alpha0, zq, vq));
        }
      }
      trace.final_loss = oracle.loss(x);
      if (!std::isfinite(trace.final_loss)) {
        throw NumericalError("run_baseline: non-finite loss at end of run");
      }
    } catch (const NumericalError& err) {
      trace.aborted = true;
      trace.abort_reason = err.what();
      trace.final_loss = kNaN;
    }
    trace.final_x = std::move(x);
    return trace;
  }

  validate_rule(params.rule);
  SgmState state = make_sgm_state(std::move(x0), step_size_at(params.rule, 0),
                                  params.beta);
  HalfQueue zq, vq;
  try {
    for (std::uint64_t iter = 1; iter <= cfg.max_iterations; ++iter) {
      state.alpha = step_size_at(params.rule, iter - 1);
      const ParamVector g = oracle.stochastic_grad(state.x);
      const double xg = dot(state.x, g);
      const double d2_prev = cfg.pairing == StatPairing::previous_direction
                                 ? squared_norm(state.d)
                                 : 0.0;
      state = sgm_step(std::move(state), g);
      const double d2 = cfg.pairing == StatPairing::previous_direction
                            ? d2_prev
                            : squared_norm(state.d);
      const StatPair zv = make_stat_pair(xg, d2, state.alpha, state.beta);
      zq.push(zv.z);
      vq.push(zv.v);
      if (iter % cfg.period == 0) {
        const TestReport report = evaluate_test(zq, vq, cfg);
        trace.rows.push_back(report_row(iter, oracle.loss(state.x), state.alpha, report));
      } else if (iter % kLossCadence == 0) {
        trace.rows.push_back(stats_row(iter, oracle.loss(state.x), state.alpha, zq, vq));
      }
    }
    trace.final_loss = oracle.loss(state.x);
    if (!std::isfinite(trace.final_loss)) {
      throw NumericalError("run_baseline: non-finite loss at end of run");
    }
  } catch (const NumericalError& err) {
    trace.aborted = true;
    trace.abort_reason = err.what();
    trace.final_loss = kNaN;
  }
  trace.final_x = std::move(state.x);
  return trace;
}

std::uint64_t first_drop_or_max(const RunTrace& trace, std::uint64_t max_iterations) {
  return trace.drop_iters.empty() ? max_iterations : trace.drop_iters.front();
}

VarianceExperimentResult run_variance_experiment(const ProblemFactory& factory,
                                                 TestKind test, std::uint64_t period,
                                                 double delta, double gamma,
                                                 std::span<const std::uint64_t> seeds,
                                                 const SasaConfig& base) {
  if (seeds.empty()) {
    throw std::invalid_argument("run_variance_experiment: no seeds given");
  }
  VarianceExperimentResult result;
  for (const std::uint64_t seed : seeds) {
    SasaConfig cfg = base;
    cfg.test = test;
    cfg.period = period;
    cfg.delta = delta;
    cfg.gamma = gamma;
    cfg.seed = seed;
    auto oracle = factory(seed);
    const RunTrace trace = run_sasa(*oracle, cfg);
    result.seeds.push_back(seed);
    result.first_drop_iters.push_back(first_drop_or_max(trace, cfg.max_iterations));
    result.final_losses.push_back(trace.final_loss);
  }
  const std::size_t n = result.first_drop_iters.size();
  if (n < 2) {
    result.degenerate = true;
    result.first_drop_stddev = 0.0;
    return result;
  }
  double mean = 0.0;
  for (const auto it : result.first_drop_iters) mean += static_cast<double>(it);
  mean /= static_cast<double>(n);
  double acc = 0.0;
  for (const auto it : result.first_drop_iters) {
    const double dev = static_cast<double>(it) - mean;
    acc += dev * dev;
  }
  result.first_drop_stddev = std::sqrt(acc / static_cast<double>(n - 1));
  return result;
}

SweepResult run_sweep(const ProblemFactory& factory, const SasaConfig& base,
                      SweepAxis axis, std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("run_sweep: empty value list");
  for (const double v : values) {
    SasaConfig probe = base;
    switch (axis) {
      case SweepAxis::delta: probe.delta = v; break;
      case SweepAxis::gamma: probe.gamma = v; break;
      case SweepAxis::zeta: probe.zeta = v; break;
    }
    validate_config(probe);  // reject every bad value before any run
  }
  SweepResult result;
  result.axis = axis;
  result.values.assign(values.begin(), values.end());
  for (const double v : values) {
    SasaConfig cfg = base;
    switch (axis) {
      case SweepAxis::delta: cfg.delta = v; break;
      case SweepAxis::gamma: cfg.gamma = v; break;
      case SweepAxis::zeta: cfg.zeta = v; break;
    }
    auto oracle = factory(base.seed);
    result.traces.push_back(run_sasa(*oracle, cfg));
  }
  return result;
}

}  // namespace sasa
