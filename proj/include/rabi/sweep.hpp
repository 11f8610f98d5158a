#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rabi/run_config.hpp"

namespace rabi {

struct SweepRow {
  double t = 0;
  std::vector<double> populations;
};

struct SweepReport {
  std::size_t n = 0;
  std::vector<double> couplings;
  Method method_used = Method::closed;
  std::vector<double> eigenvalues;
  std::vector<double> char_poly_recurrence;
  std::vector<double> char_poly_closed_form;
  bool odd_parity = false;
  double char_poly_max_rel_diff = 0;
  double max_unitarity_defect = 0;
  double max_population_error = 0;  // max |sum_k P_k - 1|
  std::vector<std::string> warnings;
  std::vector<SweepRow> rows;
};

/// Evaluates U(t) and the level populations on steps+1 uniform samples of [t_start, t_end].
SweepReport run_sweep(const RunConfig& cfg);

void write_csv(const SweepReport& report, std::ostream& out);
void write_json(const SweepReport& report, std::ostream& out);

/// Writes to cfg.output_path (or out when unset) in cfg.format. A partially written
/// file is removed if writing fails.
void write_report(const SweepReport& report, const RunConfig& cfg, std::ostream& out);

}  // namespace rabi
