#ifndef SASA_TRACE_IO_HPP
#define SASA_TRACE_IO_HPP

#include <string>
#include <vector>

#include "sasa/harness.hpp"
#include "sasa/pflug.hpp"

namespace sasa {

// Header: iter,loss,alpha,n_samples,zbar,vbar,sigma_hat,lci,uci,dropped
void write_trace_csv(const RunTrace& trace, const std::string& path);

struct SummaryRow {
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> drop_iters;  // joined with ';' inside the cell
  double final_loss = 0.0;
};

// Header: seed,drop_iters,final_loss
void write_summary_csv(const std::vector<SummaryRow>& rows,
                       const std::string& path);

// Header: iter,yaida_ratio,pflug_rel_error,pflug_lhs,pflug_rhs
void write_condition_csv(const std::vector<ConditionCheckpoint>& trace,
                         const std::string& path);

std::string format_double(double v);  // round-trip safe, "nan" for NaN

}  // namespace sasa

#endif  // SASA_TRACE_IO_HPP
