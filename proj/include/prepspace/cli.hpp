#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace prepspace::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsageError = 2,
};

struct RunConfig {
  std::string command;  // evolve, transform, distance, bloch, verify
  std::string input_path;
  std::string output_path;  // empty: write to the output stream
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<double> tolerance;
  std::optional<std::string> method;
  std::uint64_t seed = 42;
  int n = 4;
};

// Throws prepspace::Error(InvalidArgument) on a malformed config.
void validate(const RunConfig& cfg);

int cmd_evolve(const RunConfig& cfg, std::ostream& out);
int cmd_transform(const RunConfig& cfg, std::ostream& out);
int cmd_distance(const RunConfig& cfg, std::ostream& out);
int cmd_bloch(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

// Dispatches on cfg.command. Errors are reported on err and mapped to kUsageError.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace prepspace::cli
