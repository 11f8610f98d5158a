#include "rabi/run_config.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rabi/errors.hpp"

namespace rabi {

namespace {

using nlohmann::json;

// Field values as text, before validation. Lists stay comma-separated strings so
// flags and file values share one conversion path.
struct RawConfig {
  std::optional<std::string> n, couplings, omegas, phis, e0, energies, t_start, t_end, steps,
      method, initial, tol, output, format;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, const std::string& field) {
  const std::string s = trim(text);
  double v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ValidationError(field + ": '" + s + "' is not a finite number");
  }
  return v;
}

std::size_t parse_count(std::string_view text, const std::string& field) {
  const std::string s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v < 0) {
    throw ValidationError(field + ": '" + s + "' is not a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (!s.empty() && s.back() == ',') parts.emplace_back();
  return parts;
}

std::vector<double> parse_list(const std::string& s, const std::string& field) {
  if (trim(s).empty()) return {};
  std::vector<double> out;
  for (const auto& part : split(s)) out.push_back(parse_double(part, field));
  return out;
}

// An amplitude is "re" or "re:im".
Complex parse_amplitude(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return {parse_double(s, "initial"), 0.0};
  return {parse_double(s.substr(0, colon), "initial"), parse_double(s.substr(colon + 1), "initial")};
}

std::string scalar_text(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  throw ValidationError(field + ": expected a number or string in config file");
}

std::string list_text(const json& v, const std::string& field) {
  if (!v.is_array()) return scalar_text(v, field);
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    const auto& item = v[i];
    if (item.is_array()) {
      if (item.size() != 2) throw ValidationError(field + ": complex entries must be [re, im]");
      out += scalar_text(item[0], field) + ':' + scalar_text(item[1], field);
    } else {
      out += scalar_text(item, field);
    }
  }
  return out;
}

void merge_json(RawConfig& raw, const json& doc) {
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  const std::pair<const char*, std::optional<std::string> RawConfig::*> fields[] = {
      {"n", &RawConfig::n},           {"couplings", &RawConfig::couplings},
      {"omegas", &RawConfig::omegas}, {"phis", &RawConfig::phis},
      {"e0", &RawConfig::e0},         {"energies", &RawConfig::energies},
      {"t-start", &RawConfig::t_start}, {"t-end", &RawConfig::t_end},
      {"steps", &RawConfig::steps},   {"method", &RawConfig::method},
      {"initial", &RawConfig::initial}, {"tol", &RawConfig::tol},
      {"output", &RawConfig::output}, {"format", &RawConfig::format}};
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const auto& [name, member] : fields) {
      if (key == name) {
        raw.*member = list_text(value, key);
        known = true;
        break;
      }
    }
    if (!known) throw ValidationError("config: unknown field '" + key + "'");
  }
}

RawConfig raw_from_json_text(const std::string& text, const std::string& origin) {
  RawConfig raw;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("config: cannot parse " + origin + ": " + e.what());
  }
  merge_json(raw, doc);
  return raw;
}

RunConfig finalize(const RawConfig& raw) {
  RunConfig cfg;

  if (!raw.couplings) throw ValidationError("couplings: required");
  cfg.couplings = parse_list(*raw.couplings, "couplings");
  cfg.n = raw.n ? parse_count(*raw.n, "n") : cfg.couplings.size() + 1;
  if (cfg.n < 2) throw ValidationError("n: must be at least 2");
  if (cfg.couplings.size() != cfg.n - 1) {
    throw ValidationError("couplings: expected " + std::to_string(cfg.n - 1) + " couplings for n=" +
                          std::to_string(cfg.n) + ", got " + std::to_string(cfg.couplings.size()));
  }
  for (std::size_t k = 0; k < cfg.couplings.size(); ++k) {
    if (!(cfg.couplings[k] > 0)) {
      throw ValidationError("couplings: g_" + std::to_string(k + 1) + " must be strictly positive");
    }
  }

  std::vector<double> phis =
      raw.phis ? parse_list(*raw.phis, "phis") : std::vector<double>(cfg.n - 1, 0.0);
  if (raw.energies) {
    if (raw.omegas || raw.e0) throw ValidationError("energies: mutually exclusive with omegas/e0");
    auto energies = parse_list(*raw.energies, "energies");
    if (energies.size() != cfg.n) {
      throw ValidationError("energies: expected " + std::to_string(cfg.n) + " values for n=" +
                            std::to_string(cfg.n) + ", got " + std::to_string(energies.size()));
    }
    cfg.drive = DriveConfig::from_energies(std::move(energies), std::move(phis));
  } else {
    cfg.drive.omegas =
        raw.omegas ? parse_list(*raw.omegas, "omegas") : std::vector<double>(cfg.n - 1, 0.0);
    cfg.drive.phis = std::move(phis);
    cfg.drive.e0 = raw.e0 ? parse_double(*raw.e0, "e0") : 0.0;
  }
  cfg.drive.validate(cfg.n);

  cfg.t_start = raw.t_start ? parse_double(*raw.t_start, "t-start") : 0.0;
  if (!raw.t_end) throw ValidationError("t-end: required");
  cfg.t_end = parse_double(*raw.t_end, "t-end");
  if (cfg.t_end < cfg.t_start) throw ValidationError("t-end: must be >= t-start");
  cfg.steps = raw.steps ? parse_count(*raw.steps, "steps") : 100;
  if (cfg.steps < 1) throw ValidationError("steps: must be at least 1");

  const std::string method = raw.method ? trim(*raw.method) : "auto";
  cfg.method_was_auto = method == "auto";
  if (method == "auto") {
    cfg.method = cfg.n <= 7 ? Method::closed : Method::general;
  } else if (method == "closed") {
    if (cfg.n > 7) {
      throw ValidationError("method: closed forms support n <= 7, got n=" + std::to_string(cfg.n));
    }
    cfg.method = Method::closed;
  } else if (method == "general") {
    cfg.method = Method::general;
  } else if (method == "oracle") {
    cfg.method = Method::oracle;
  } else {
    throw ValidationError("method: expected auto|closed|general|oracle, got '" + method + "'");
  }

  if (raw.initial) {
    const auto parts = split(*raw.initial);
    if (parts.size() == 1 && parts[0].find(':') == std::string::npos) {
      const std::size_t level = parse_count(parts[0], "initial");
      if (level >= cfg.n) {
        throw ValidationError("initial: level " + std::to_string(level) + " out of range for n=" +
                              std::to_string(cfg.n));
      }
      cfg.initial = level;
    } else {
      std::vector<Complex> amps;
      for (const auto& p : parts) amps.push_back(parse_amplitude(p));
      if (amps.size() != cfg.n) {
        throw ValidationError("initial: expected " + std::to_string(cfg.n) + " amplitudes, got " +
                              std::to_string(amps.size()));
      }
      double norm2 = 0;
      for (const auto& z : amps) norm2 += std::norm(z);
      if (!(std::abs(norm2 - 1.0) <= 1e-10)) {
        throw ValidationError("initial: amplitude vector is not normalized");
      }
      cfg.initial = std::move(amps);
    }
  }

  cfg.tol = raw.tol ? parse_double(*raw.tol, "tol") : kDefaultEigenTol;
  if (!(cfg.tol > 0)) throw ValidationError("tol: must be positive");

  if (raw.output && !trim(*raw.output).empty()) cfg.output_path = trim(*raw.output);
  const std::string format = raw.format ? trim(*raw.format) : "csv";
  if (format == "csv") {
    cfg.format = OutputFormat::csv;
  } else if (format == "json") {
    cfg.format = OutputFormat::json;
  } else {
    throw ValidationError("format: expected csv|json, got '" + format + "'");
  }
  return cfg;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Exact propagator and level populations of an n-level atom driven by n-1 resonant fields"};
  app.name("rabi");

  RawConfig flags;
  std::string config_path;
  auto opt = [&](const char* name, std::optional<std::string>& slot, const char* help) {
    app.add_option_function<std::string>(name, [&slot](const std::string& v) { slot = v; }, help);
  };
  opt("--n", flags.n, "Number of levels");
  opt("--couplings", flags.couplings, "Coupling constants g_1..g_{n-1}, comma-separated");
  opt("--omegas", flags.omegas, "Field frequencies omega_1..omega_{n-1} (default 0)");
  opt("--phis", flags.phis, "Field phases phi_1..phi_{n-1} in radians (default 0)");
  opt("--e0", flags.e0, "Ground energy E_0 (default 0)");
  opt("--energies", flags.energies, "Level energies E_0..E_{n-1}; derives omegas and e0");
  opt("--t-start", flags.t_start, "First time sample (default 0)");
  opt("--t-end", flags.t_end, "Last time sample");
  opt("--steps", flags.steps, "Number of intervals; steps+1 samples (default 100)");
  opt("--method", flags.method, "auto|closed|general|oracle (default auto)");
  opt("--initial", flags.initial, "Initial level index, or amplitudes re[:im],... (default 0)");
  opt("--tol", flags.tol, "Relative eigenvalue tolerance (default 1e-13)");
  opt("--output", flags.output, "Output file (default stdout)");
  opt("--format", flags.format, "csv|json (default csv)");
  app.add_option("--config", config_path, "JSON config file; flags override its values");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw ValidationError(std::string("arguments: ") + e.what());
  }

  RawConfig raw;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ValidationError("config: cannot open '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    raw = raw_from_json_text(buf.str(), config_path);
  }
  auto override_with = [](std::optional<std::string>& dst, const std::optional<std::string>& src) {
    if (src) dst = src;
  };
  override_with(raw.n, flags.n);
  override_with(raw.couplings, flags.couplings);
  override_with(raw.omegas, flags.omegas);
  override_with(raw.phis, flags.phis);
  override_with(raw.e0, flags.e0);
  override_with(raw.energies, flags.energies);
  override_with(raw.t_start, flags.t_start);
  override_with(raw.t_end, flags.t_end);
  override_with(raw.steps, flags.steps);
  override_with(raw.method, flags.method);
  override_with(raw.initial, flags.initial);
  override_with(raw.tol, flags.tol);
  override_with(raw.output, flags.output);
  override_with(raw.format, flags.format);
  // Energies given on the command line replace a file's omegas/e0 and vice versa.
  if (flags.energies && !flags.omegas && !flags.e0) {
    raw.omegas.reset();
    raw.e0.reset();
  } else if ((flags.omegas || flags.e0) && !flags.energies) {
    raw.energies.reset();
  }
  return finalize(raw);
}

RunConfig parse_config_json(const std::string& json_text) {
  return finalize(raw_from_json_text(json_text, "config text"));
}

}  // namespace rabi
