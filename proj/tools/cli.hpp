#pragma once

// Command-line front end: argument parsing and subcommand execution.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thermoforms/domains.hpp"
#include "thermoforms/entropy.hpp"
#include "thermoforms/oracle.hpp"
#include "thermoforms/processes.hpp"

namespace thermoforms::cli {

enum class Command { forms, processes, curve, domains, oracle };
enum class OutputFormat { csv, json };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::forms;
  ModelKind model = ModelKind::ideal_gas;
  double n = 3.0;

  std::pair<double, double> at{1.0, 1.0};     // forms: (e, v)
  GridAxis T{0.2, 1.4, 400};                  // processes / domains
  GridAxis v{0.4, 10.0, 400};
  std::pair<double, double> start{1.0, 1.0};  // curve: (e, v)
  IntegrationOptions integration;

  oracle::Family family = oracle::Family::gaussian;
  double lambda = 0.0;

  std::string out_path;  // empty: standard output
  OutputFormat format = OutputFormat::csv;
  unsigned workers = 0;  // 0: all cores
};

/// Parses "min:max:steps"; requires min < max and steps >= 2.
GridAxis parse_grid_axis(const std::string& text);
/// Parses "a,b".
std::pair<double, double> parse_pair(const std::string& text);
/// THERMOFORMS_THREADS, or 0 when unset.  Throws UsageError if malformed.
unsigned workers_from_environment();

/// argv[0] is the program name.  Throws UsageError or HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes the subcommand, writing to config.out_path (or `out`).  Runtime
/// failures are reported on `err` and yield exit code 1.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the exit-code contract applied.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g
std::string format_number(double x);

}  // namespace thermoforms::cli
