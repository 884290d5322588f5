#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "levyhit/levy_model.hpp"

namespace levyhit {

// One batch invocation. model_file is a preset name or a model config path;
// output empty means the CSV goes to the stream instead of a file. Overrides
// carry the command-specific flags as raw text; unrecognized keys are input
// errors so typos cannot silently fall back to defaults.
//
//   psi:    xi-grid
//   kernel: lambda, x-grid
//   asymp:  (none)
//   fluct:  x-grid, seed, mc-paths
//   hit:    x, R, t-grid, mc-paths, seed, dt, t-max
//   verify: suite
struct RunSpec {
    enum class Command { psi, kernel, asymp, fluct, hit, verify };
    Command command = Command::psi;
    std::string model_file = "brownian";
    std::string output;
    std::map<std::string, std::string> overrides;
};

// "lo:hi:n" -> n log-spaced points from lo to hi inclusive (lo, hi > 0)
std::vector<double> parse_log_grid(const std::string& text);

// One verification row: value must land in [lo, hi].
struct SuiteRow {
    std::string name;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass = false;
};
struct SuiteResult {
    std::string suite;
    std::vector<SuiteRow> rows;
    bool passed = false;
};

const std::vector<std::string>& verify_suite_names();
SuiteResult run_verify_suite(const std::string& suite, const LevyModel& model);

// Executes the spec and reports through the stream. Returns 0 on success,
// 1 on input errors (unknown model, bad grid, unrecognized override), 2 when
// a verification band is violated (verify suites, MC-vs-comparator in hit).
int run(const RunSpec& spec, std::ostream& out);

}  // namespace levyhit
