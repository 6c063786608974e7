#include "sasa/sgm.hpp"

#include <cmath>

namespace sasa {

SgmState make_sgm_state(ParamVector x0, double alpha, double beta) {
  if (x0.empty()) throw std::invalid_argument("make_sgm_state: empty parameter vector");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("make_sgm_state: alpha must be positive and finite");
  }
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::invalid_argument("make_sgm_state: beta must lie in [0, 1)");
  }
  require_all_finite(x0, "x0");
  SgmState state;
  state.d.assign(x0.size(), 0.0);
  state.x = std::move(x0);
  state.alpha = alpha;
  state.beta = beta;
  state.k = 0;
  return state;
}

SgmState sgm_step(SgmState state, const ParamVector& g) {
  require_same_dim(state.x, g, "sgm_step");
  require_all_finite(g, "gradient");
  const double one_minus_beta = 1.0 - state.beta;
  for (std::size_t i = 0; i < g.size(); ++i) {
    state.d[i] = one_minus_beta * g[i] + state.beta * state.d[i];
    state.x[i] -= state.alpha * state.d[i];
  }
  ++state.k;
  return state;
}

SgmState sgm_step_common(SgmState state, const ParamVector& g, double alpha_prime) {
  require_same_dim(state.x, g, "sgm_step_common");
  require_all_finite(g, "gradient");
  if (!(alpha_prime > 0.0)) {
    throw std::invalid_argument("sgm_step_common: alpha_prime must be positive");
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    state.d[i] = g[i] + state.beta * state.d[i];
    state.x[i] -= alpha_prime * state.d[i];
  }
  ++state.k;
  return state;
}

void validate_rule(const StepSizeRule& rule) {
  std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstantRule>) {
          if (!(r.alpha > 0.0)) {
            throw std::invalid_argument("ConstantRule: alpha must be positive");
          }
        } else if constexpr (std::is_same_v<T, PolyRule>) {
          if (!(r.a > 0.0) || !(r.b > 0.0)) {
            throw std::invalid_argument("PolyRule: a and b must be positive");
          }
          if (!(r.c > 0.5 && r.c <= 1.0)) {
            throw std::invalid_argument("PolyRule: c must lie in (1/2, 1]");
          }
        } else {
          if (!(r.zeta > 0.0 && r.zeta < 1.0)) {
            throw std::invalid_argument("ConstantAndCutRule: zeta must lie in (0, 1)");
          }
          if (r.drop_every < 1) {
            throw std::invalid_argument("ConstantAndCutRule: drop period must be >= 1");
          }
          if (!(r.alpha0 > 0.0)) {
            throw std::invalid_argument("ConstantAndCutRule: alpha0 must be positive");
          }
        }
      },
      rule);
}

double step_size_at(const StepSizeRule& rule, std::uint64_t k) {
  return std::visit(
      [k](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstantRule>) {
          return r.alpha;
        } else if constexpr (std::is_same_v<T, PolyRule>) {
          return r.a / std::pow(static_cast<double>(k) + r.b, r.c);
        } else {
          double alpha = r.alpha0;
          for (std::uint64_t cuts = k / r.drop_every; cuts > 0; --cuts) alpha *= r.zeta;
          return alpha;
        }
      },
      rule);
}

}  // namespace sasa
