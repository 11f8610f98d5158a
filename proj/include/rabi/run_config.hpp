#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rabi/propagator.hpp"

namespace rabi {

enum class OutputFormat { csv, json };

/// Everything the command-line front end needs for one time sweep.
struct RunConfig {
  std::size_t n = 0;
  std::vector<double> couplings;
  DriveConfig drive;
  double t_start = 0;
  double t_end = 0;
  std::size_t steps = 0;
  Method method = Method::closed;  // "auto" is resolved during parsing
  bool method_was_auto = true;
  InitialState initial = std::size_t{0};
  std::optional<std::string> output_path;
  OutputFormat format = OutputFormat::csv;
  double tol = kDefaultEigenTol;
};

/// Thrown by parse_config when --help is given; carries the usage text.
struct HelpRequested {
  std::string text;
};

/**
 * Parses command-line arguments (argv[0] excluded). `--config FILE` loads a JSON
 * document keyed by the long flag names without dashes (e.g. "t-end"); explicit flags
 * override file values. Throws ValidationError naming the offending field.
 */
RunConfig parse_config(const std::vector<std::string>& args);

/// Parses a JSON config document directly (no flags).
RunConfig parse_config_json(const std::string& json_text);

}  // namespace rabi
