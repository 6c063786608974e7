#include "sasa/stationarity.hpp"

#include <cmath>
#include <stdexcept>

namespace sasa {

void HalfQueue::add_to_sum(double value) {
  // Neumaier-compensated accumulation; eviction subtracts.
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    sum_comp_ += (sum_ - t) + value;
  } else {
    sum_comp_ += (value - t) + sum_;
  }
  sum_ = t;
}

void HalfQueue::push(double value) {
  if (!std::isfinite(value)) {
    throw NumericalError("HalfQueue::push: non-finite sample");
  }
  buf_.push_back(value);
  add_to_sum(value);
  ++total_pushed_;
  if (total_pushed_ % 2 == 0) {
    add_to_sum(-buf_[begin_]);
    ++begin_;
    if (begin_ >= 4096 && begin_ * 2 >= buf_.size()) {
      buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(begin_));
      begin_ = 0;
    }
  }
}

void HalfQueue::reset() {
  buf_.clear();
  begin_ = 0;
  total_pushed_ = 0;
  sum_ = 0.0;
  sum_comp_ = 0.0;
}

double HalfQueue::mean() const {
  if (empty()) throw std::logic_error("HalfQueue::mean: empty queue");
  return (sum_ + sum_comp_) / static_cast<double>(size());
}

double yaida_coefficient(double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("yaida_coefficient: alpha <= 0");
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::invalid_argument("yaida_coefficient: beta outside [0, 1)");
  }
  return 0.5 * alpha * (1.0 + beta) / (1.0 - beta);
}

StatPair make_stat_pair(double xg_dot, double d_sqnorm, double alpha, double beta) {
  const double v = yaida_coefficient(alpha, beta) * d_sqnorm;
  return StatPair{xg_dot - v, v};
}

StatPair collect(const SgmState& state_before, const ParamVector& g,
                 const ParamVector& d_new, StatPairing pairing) {
  require_same_dim(state_before.x, g, "collect");
  require_same_dim(state_before.x, d_new, "collect");
  const ParamVector& d = pairing == StatPairing::current_direction ? d_new : state_before.d;
  return make_stat_pair(dot(state_before.x, g), squared_norm(d), state_before.alpha,
                        state_before.beta);
}

std::optional<RunningMeans> running_means(const HalfQueue& zq, const HalfQueue& vq) {
  if (zq.size() != vq.size()) {
    throw std::invalid_argument("running_means: queues have different lengths");
  }
  if (zq.empty()) return std::nullopt;
  return RunningMeans{zq.mean(), vq.mean(), zq.size()};
}

void reset_all(HalfQueue& zq, HalfQueue& vq) {
  zq.reset();
  vq.reset();
}

}  // namespace sasa
