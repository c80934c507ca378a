#pragma once

#include <optional>
#include <string>

namespace endo {

struct CliOptions {
  bool trace = false;
  bool json = false;
  std::optional<int> precision;
  int depth = 3;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;     // validation or matching failure, failed check
inline constexpr int kExitArithmetic = 2;  // precision, poles, degenerate forms
inline constexpr int kExitParse = 3;

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;
};

// The *_text variants take the document itself instead of a path.
CommandResult cmd_validate(const std::string& path, const CliOptions& opt = {});
CommandResult cmd_validate_text(const std::string& doc, const CliOptions& opt = {});
CommandResult cmd_compute(const std::string& path, const CliOptions& opt = {});
CommandResult cmd_compute_text(const std::string& doc, const CliOptions& opt = {});
CommandResult cmd_check(const std::string& path, const CliOptions& opt = {});
CommandResult cmd_check_text(const std::string& doc, const CliOptions& opt = {});
// Norm test of value against Q_p(sqrt(delta)), by the Hilbert symbol and by search.
CommandResult cmd_oracle(long p, const std::string& delta, const std::string& value, const CliOptions& opt = {});

}  // namespace endo
