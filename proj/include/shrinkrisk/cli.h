#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace shrinkrisk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Seed used by `verify` when none is given.
inline constexpr std::uint64_t kDefaultVerifySeed = 20240601;

/// Reads a flat `key = value` config file into `--key`, `value` token pairs. Blank
/// lines and text after `#` are ignored. Throws std::invalid_argument on a
/// malformed line or an unreadable file.
std::vector<std::string> read_config_file(const std::string& path);

/// Splits a comma-separated list, trimming whitespace and dropping empty items.
std::vector<std::string> split_list(std::string_view text);

/// Runs one subcommand. `args` excludes the program name. Config-file values
/// are inserted ahead of the command-line flags, so the command line wins.
/// CSV goes to --out when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shrinkrisk::cli
