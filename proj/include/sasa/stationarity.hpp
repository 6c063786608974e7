#ifndef SASA_STATIONARITY_HPP
#define SASA_STATIONARITY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sasa/sgm.hpp"

namespace sasa {

// Bounded sample store that keeps the most recent half of everything
// pushed: it pops once for every second push, so after n pushes the
// buffer holds the latest ceil(n/2) values in push order. A compensated
// running sum makes mean() O(1) even as the window slides.
class HalfQueue {
 public:
  void push(double value);  // rejects non-finite values
  void reset();

  std::size_t size() const { return buf_.size() - begin_; }
  std::uint64_t total_pushed() const { return total_pushed_; }
  bool empty() const { return size() == 0; }

  double operator[](std::size_t i) const { return buf_[begin_ + i]; }
  std::span<const double> values() const {
    return {buf_.data() + begin_, size()};
  }

  double mean() const;  // requires size() >= 1

 private:
  void add_to_sum(double value);

  std::vector<double> buf_;
  std::size_t begin_ = 0;
  std::uint64_t total_pushed_ = 0;
  double sum_ = 0.0;
  double sum_comp_ = 0.0;
};

// One Yaida sample: z pairs the gradient inner product against the scaled
// direction norm, v is the scale term itself (always nonnegative).
struct StatPair {
  double z;
  double v;
};

// Which direction enters the z and v terms. Algorithm-style collection
// pairs <x^k, g^k> with the freshly computed d^{k+1}; the alternative
// pairs it with the pre-step d^k.
enum class StatPairing {
  current_direction,   // d^{k+1}
  previous_direction,  // d^k
};

// (alpha/2) (1+beta)/(1-beta); recompute whenever alpha changes.
double yaida_coefficient(double alpha, double beta);

// z = <x, g> - c ||d||^2 and v = c ||d||^2 from the two inner products.
StatPair make_stat_pair(double xg_dot, double d_sqnorm, double alpha, double beta);

// Forms the (z, v) sample for one step: state_before holds x^k and d^k,
// g is the gradient used in the step, d_new is the resulting d^{k+1}.
StatPair collect(const SgmState& state_before, const ParamVector& g,
                 const ParamVector& d_new,
                 StatPairing pairing = StatPairing::current_direction);

struct RunningMeans {
  double zbar;
  double vbar;
  std::size_t n;
};

// Arithmetic means of both buffers; nullopt when the queues are empty.
std::optional<RunningMeans> running_means(const HalfQueue& zq,
                                          const HalfQueue& vq);

void reset_all(HalfQueue& zq, HalfQueue& vq);

}  // namespace sasa

#endif  // SASA_STATIONARITY_HPP
