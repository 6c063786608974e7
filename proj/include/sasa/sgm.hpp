#ifndef SASA_SGM_HPP
#define SASA_SGM_HPP

#include <cstdint>
#include <variant>

#include "sasa/param_vector.hpp"

namespace sasa {

// State of the stochastic gradient with momentum recursion
//   d' = (1 - beta) g + beta d
//   x' = x - alpha d'
// run at constant (alpha, beta). The direction starts at zero.
struct SgmState {
  ParamVector x;
  ParamVector d;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t k = 0;
};

// Validates alpha > 0 and 0 <= beta < 1; d is zero-initialized.
SgmState make_sgm_state(ParamVector x0, double alpha, double beta);

// One step of the normalized update above. The gradient is only read.
SgmState sgm_step(SgmState state, const ParamVector& g);

// The more common momentum form d' = g + beta d, x' = x - alpha' d'.
// With alpha' = alpha (1 - beta) its x-trajectory matches sgm_step.
SgmState sgm_step_common(SgmState state, const ParamVector& g, double alpha_prime);

struct ConstantRule {
  double alpha;
};

// alpha_k = a / (k + b)^c
struct PolyRule {
  double a;
  double b;
  double c;
};

// alpha_k = alpha0 * zeta^floor(k / drop_every); the cut lands at the
// start of iteration k when k % drop_every == 0, k > 0.
struct ConstantAndCutRule {
  double alpha0;
  double zeta;
  std::uint64_t drop_every;
};

using StepSizeRule = std::variant<ConstantRule, PolyRule, ConstantAndCutRule>;

// Validates the rule's parameter ranges; throws std::invalid_argument.
void validate_rule(const StepSizeRule& rule);

double step_size_at(const StepSizeRule& rule, std::uint64_t k);

}  // namespace sasa

#endif  // SASA_SGM_HPP
