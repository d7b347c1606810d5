#pragma once

// Command-line front end: argument parsing, dispatch and exit codes.
//
// Exit codes: 0 success, 1 domain error (bad group file, failed identity
// check, geometric precondition), 2 usage error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace horoflow {

enum class Command { verify, classify, orbit, inj, diagnose };

std::string to_string(Command c);

/// Rejected flag combination; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::verify;
  std::string group_path;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::optional<int> depth;  // defaults to the group file's max_word_length
  std::string output_path;   // empty: standard output

  // verify
  std::size_t samples = 10000;
  std::size_t substitution_samples = 1000;
  // classify
  std::string point = "inf";
  // orbit, inj
  double t_start = 0.0;
  double t_end = 10.0;
  double step = 0.1;
  std::string flow = "horocycle";
  // orbit, inj, diagnose: unit tangent vector as a, b, c, d of its frame
  std::vector<double> frame{1.0, 0.0, 0.0, 1.0};
  // diagnose
  double band_lower = 0.5;
  double band_upper = 2.0;
  double eps = 1e-6;
  int alpha_depth = 2;

  /// Throws UsageError.
  void validate() const;
};

/// Runs a validated config, writing the report to output_path or to out.
/// Diagnostics go to err. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Returns the exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace horoflow
