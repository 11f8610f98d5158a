#include "rabi/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "rabi/errors.hpp"

namespace rabi {

SweepReport run_sweep(const RunConfig& cfg) {
  const CouplingVector g(cfg.couplings);
  if (g.levels() != cfg.n) throw ValidationError("couplings: length does not match n");

  SweepReport report;
  report.n = cfg.n;
  report.couplings = cfg.couplings;
  if (auto w = cfg.drive.ordering_warning()) report.warnings.push_back(*w);

  const CharPoly rec = char_poly_recurrence(g);
  const CharPoly closed = char_poly_closed_form(g);
  report.char_poly_recurrence = rec.even_coeffs;
  report.char_poly_closed_form = closed.even_coeffs;
  report.odd_parity = rec.odd_parity;
  for (std::size_t k = 0; k < rec.even_coeffs.size(); ++k) {
    const double diff = std::abs(rec.even_coeffs[k] - closed.even_coeffs[k]);
    report.char_poly_max_rel_diff =
        std::max(report.char_poly_max_rel_diff, diff / std::abs(rec.even_coeffs[k]));
  }

  const Propagator prop(g, cfg.drive, cfg.method, cfg.tol);
  report.method_used = prop.method_used();
  report.eigenvalues = prop.spectrum().eigenvalues();
  if (prop.method_used() != prop.method_requested()) {
    report.warnings.push_back("degenerate spectrum: fell back to the series exponential");
  }

  report.rows.reserve(cfg.steps + 1);
  const double dt = (cfg.t_end - cfg.t_start) / static_cast<double>(cfg.steps);
  for (std::size_t i = 0; i <= cfg.steps; ++i) {
    const double t = i == cfg.steps ? cfg.t_end : cfg.t_start + static_cast<double>(i) * dt;
    const ComplexMatrix u = prop.at(t);
    if (!u.all_finite()) {
      throw NumericalError("run_sweep: non-finite evolution operator at t=" + std::to_string(t));
    }
    report.max_unitarity_defect = std::max(report.max_unitarity_defect, unitarity_defect(u));
    SweepRow row{t, populations(u, cfg.initial)};
    double total = 0;
    for (double p : row.populations) total += p;
    report.max_population_error = std::max(report.max_population_error, std::abs(total - 1.0));
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt17(v[i]);
  }
  return out;
}

}  // namespace

void write_csv(const SweepReport& r, std::ostream& out) {
  out << "# n: " << r.n << '\n';
  out << "# couplings: " << join(r.couplings) << '\n';
  out << "# method: " << to_string(r.method_used) << '\n';
  out << "# eigenvalues: " << join(r.eigenvalues) << '\n';
  out << "# odd_parity: " << (r.odd_parity ? "true" : "false") << '\n';
  out << "# char_poly_recurrence: " << join(r.char_poly_recurrence) << '\n';
  out << "# char_poly_closed_form: " << join(r.char_poly_closed_form) << '\n';
  out << "# char_poly_max_rel_diff: " << fmt17(r.char_poly_max_rel_diff) << '\n';
  out << "# max_unitarity_defect: " << fmt17(r.max_unitarity_defect) << '\n';
  out << "# max_population_error: " << fmt17(r.max_population_error) << '\n';
  for (const auto& w : r.warnings) out << "# warning: " << w << '\n';
  out << 't';
  for (std::size_t k = 0; k < r.n; ++k) out << ",P" << k;
  out << '\n';
  for (const auto& row : r.rows) {
    out << fmt17(row.t);
    for (double p : row.populations) out << ',' << fmt17(p);
    out << '\n';
  }
}

void write_json(const SweepReport& r, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["n"] = r.n;
  doc["couplings"] = r.couplings;
  doc["method"] = std::string(to_string(r.method_used));
  doc["eigenvalues"] = r.eigenvalues;
  doc["odd_parity"] = r.odd_parity;
  doc["char_poly_recurrence"] = r.char_poly_recurrence;
  doc["char_poly_closed_form"] = r.char_poly_closed_form;
  doc["char_poly_max_rel_diff"] = r.char_poly_max_rel_diff;
  doc["max_unitarity_defect"] = r.max_unitarity_defect;
  doc["max_population_error"] = r.max_population_error;
  doc["warnings"] = r.warnings;
  std::vector<std::string> columns{"t"};
  for (std::size_t k = 0; k < r.n; ++k) columns.push_back("P" + std::to_string(k));
  doc["columns"] = columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json line = ordered_json::array();
    line.push_back(row.t);
    for (double p : row.populations) line.push_back(p);
    rows.push_back(std::move(line));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_report(const SweepReport& report, const RunConfig& cfg, std::ostream& out) {
  auto emit = [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json) {
      write_json(report, os);
    } else {
      write_csv(report, os);
    }
  };
  if (!cfg.output_path) {
    emit(out);
    return;
  }
  const std::filesystem::path path(*cfg.output_path);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError("output: cannot open '" + path.string() + "' for writing");
  try {
    emit(file);
    file.close();
    if (!file) throw std::ios_base::failure("write failed");
  } catch (...) {
    file.close();
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw ValidationError("output: failed writing '" + path.string() + "'");
  }
}

}  // namespace rabi
