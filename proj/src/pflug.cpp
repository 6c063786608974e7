#include "sasa/pflug.hpp"

#include <cmath>
#include <limits>

#include "sasa/stationarity.hpp"

namespace sasa {

PflugDraw pflug_sample(GradientOracle& oracle, const SgmState& state) {
  const ParamVector g1 = oracle.stochastic_grad(state.x);
  const ParamVector g2 = oracle.stochastic_grad(state.x);
  require_same_dim(g1, state.x, "pflug_sample");
  require_same_dim(g2, state.x, "pflug_sample");

  const std::size_t n = state.x.size();
  ParamVector r(n), probe(n), g_avg(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = 0.5 * (g1[i] - g2[i]);
    probe[i] = state.x[i] + state.alpha * r[i];
    g_avg[i] = 0.5 * (g1[i] + g2[i]);
  }
  const ParamVector g_tilde = oracle.stochastic_grad(probe);

  PflugDraw draw;
  draw.sample.gd = dot(g_avg, state.d);
  draw.sample.rg = dot(r, g_tilde);
  draw.g_avg = std::move(g_avg);
  return draw;
}

PflugResidual pflug_residual(std::span<const PflugSample> samples, double alpha,
                             double beta, PflugScaling scaling) {
  if (samples.empty()) throw std::invalid_argument("pflug_residual: no samples");
  if (!(alpha > 0.0)) throw std::invalid_argument("pflug_residual: alpha <= 0");
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::invalid_argument("pflug_residual: beta outside [0, 1)");
  }
  double gd_sum = 0.0, rg_sum = 0.0;
  for (const auto& s : samples) {
    gd_sum += s.gd;
    rg_sum += s.rg;
  }
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  const double coeff = scaling == PflugScaling::averaged_gradient
                           ? (1.0 - beta) / (2.0 * (1.0 + beta))
                           : (1.0 - beta) / (1.0 + beta);
  PflugResidual res;
  res.lhs_mean = gd_sum * inv_n;
  res.rhs_mean = -coeff * rg_sum * inv_n;
  const double scale =
      std::max({std::abs(res.lhs_mean), std::abs(res.rhs_mean), 1e-12});
  res.relative_error = std::abs(res.lhs_mean - res.rhs_mean) / scale;
  return res;
}

std::vector<ConditionCheckpoint> compare_conditions(GradientOracle& oracle,
                                                    double alpha, double beta,
                                                    std::uint64_t horizon,
                                                    std::uint64_t checkpoint_every) {
  if (checkpoint_every < 1) {
    throw std::invalid_argument("compare_conditions: checkpoint_every must be >= 1");
  }
  std::vector<ConditionCheckpoint> trace;
  if (horizon == 0) return trace;

  SgmState state = make_sgm_state(ParamVector(oracle.dim(), 0.0), alpha, beta);
  HalfQueue zq, vq;   // Yaida statistics
  HalfQueue gdq, rgq; // Pflug statistics, same most-recent-half windowing

  for (std::uint64_t k = 1; k <= horizon; ++k) {
    const PflugDraw draw = pflug_sample(oracle, state);
    gdq.push(draw.sample.gd);
    rgq.push(draw.sample.rg);

    SgmState before = state;
    state = sgm_step(std::move(state), draw.g_avg);
    const StatPair zv = collect(before, draw.g_avg, state.d);
    zq.push(zv.z);
    vq.push(zv.v);

    if (k % checkpoint_every == 0 || k == horizon) {
      PflugSample window_means{gdq.mean(), rgq.mean()};
      const PflugResidual res =
          pflug_residual({&window_means, 1}, alpha, beta, PflugScaling::averaged_gradient);
      const auto means = running_means(zq, vq);
      const double ratio =
          means->vbar > 0.0 ? std::abs(means->zbar) / means->vbar
                            : (means->zbar == 0.0 ? 0.0
                                                  : std::numeric_limits<double>::infinity());
      trace.push_back(ConditionCheckpoint{k, ratio, res.relative_error, res.lhs_mean,
                                          res.rhs_mean});
    }
  }
  return trace;
}

}  // namespace sasa
