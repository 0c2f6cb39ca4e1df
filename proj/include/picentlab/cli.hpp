#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace picent {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

struct CliCommand {
  std::string subcommand;
  std::optional<std::uint64_t> p, t, ell, q;
  std::string out = "text";  // text | json
  std::optional<std::string> out_file;
  std::uint64_t max_order = 50000;
  std::optional<std::string> cache_dir;
  bool no_cache = false;
  std::uint64_t seed = 1;
  std::size_t instances = 200;
  std::optional<std::string> spec_path;
  std::optional<std::string> fixture;
  std::optional<std::string> synthetic;  // verify-thm32: inversions | cyclic
  std::string mutate = "none";
};

std::vector<std::string> subcommands();

/// Throws BadParameters describing the first problem; performs no computation.
void validate_command(const CliCommand& cmd);

/// Validates, dispatches and writes the report. Returns 0 when every check
/// passed, 1 when a check failed, 2 on usage, build or hypothesis errors (the
/// diagnostic goes to `err`).
int run(const CliCommand& cmd, std::ostream& out, std::ostream& err);

}  // namespace picent
