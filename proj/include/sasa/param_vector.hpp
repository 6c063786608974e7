#ifndef SASA_PARAM_VECTOR_HPP
#define SASA_PARAM_VECTOR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sasa {

// Dense real vector of model parameters; also used for gradients and
// momentum directions. Dimension is fixed for the lifetime of a run.
using ParamVector = std::vector<double>;

// Raised when an iterate, gradient, or statistic stops being a finite
// number. The harness maps this to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

double dot(const ParamVector& a, const ParamVector& b);
double squared_norm(const ParamVector& v);

// Throws NumericalError naming the first offending index.
void require_all_finite(const ParamVector& v, const char* label);

void require_same_dim(const ParamVector& a, const ParamVector& b, const char* where);

}  // namespace sasa

#endif  // SASA_PARAM_VECTOR_HPP
