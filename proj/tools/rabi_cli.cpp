// Time sweep of the n-level Rabi problem: writes level populations as CSV or JSON.

#include <iostream>
#include <string>
#include <vector>

#include "rabi/errors.hpp"
#include "rabi/run_config.hpp"
#include "rabi/sweep.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const rabi::RunConfig cfg = rabi::parse_config(args);
    const rabi::SweepReport report = rabi::run_sweep(cfg);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    rabi::write_report(report, cfg, std::cout);
  } catch (const rabi::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const rabi::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const rabi::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
