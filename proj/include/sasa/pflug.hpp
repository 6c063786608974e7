#ifndef SASA_PFLUG_HPP
#define SASA_PFLUG_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sasa/problems.hpp"
#include "sasa/sgm.hpp"

namespace sasa {

// One observation of both sides of the quadratic stationarity relation:
// gd = <g, d> (left-hand statistic), rg = <r, g~> (trace estimator).
struct PflugSample {
  double gd;
  double rg;
};

struct PflugDraw {
  ParamVector g_avg;  // (g1 + g2)/2, to be used in the SGM step
  PflugSample sample;
};

// Three-gradient sampler: g1, g2 at x give r = (g1 - g2)/2, then a third
// gradient g~ at x + alpha r; E<r, g~> = (alpha/2) tr(A Sigma). The
// averaged gradient halves the step noise, so the matching left-hand
// coefficient is the halved one below.
PflugDraw pflug_sample(GradientOracle& oracle, const SgmState& state);

enum class PflugScaling {
  averaged_gradient,  // step uses (g1+g2)/2: rhs = -(1-beta)/(2(1+beta)) mean(rg)
  single_gradient,    // step uses one fresh draw: rhs = -(1-beta)/(1+beta) mean(rg)
};

struct PflugResidual {
  double lhs_mean = 0.0;
  double rhs_mean = 0.0;
  double relative_error = 0.0;  // |lhs-rhs| / max(|lhs|, |rhs|, 1e-12)
};

PflugResidual pflug_residual(std::span<const PflugSample> samples, double alpha,
                             double beta,
                             PflugScaling scaling = PflugScaling::averaged_gradient);

struct ConditionCheckpoint {
  std::uint64_t iter;
  double yaida_ratio;         // |zbar| / vbar over the retained window
  double pflug_relative_error;
  double pflug_lhs;
  double pflug_rhs;
};

// Runs SGM at fixed (alpha, beta) with the three-gradient sampler in the
// loop, logging the Yaida ratio and the Pflug residual side by side. All
// statistics use most-recent-half windows.
std::vector<ConditionCheckpoint> compare_conditions(GradientOracle& oracle,
                                                    double alpha, double beta,
                                                    std::uint64_t horizon,
                                                    std::uint64_t checkpoint_every = 1000);

}  // namespace sasa

#endif  // SASA_PFLUG_HPP
