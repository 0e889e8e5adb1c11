#ifndef KINDRED_TOOLS_CLI_HPP
#define KINDRED_TOOLS_CLI_HPP

#include <optional>
#include <string>
#include <vector>

namespace kindred {

struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// `args` excludes the program name. `stdin_text` backs the `-` file
/// argument. `trace_env` mirrors KINDRED_TRACE=1.
CliResult run_cli(const std::vector<std::string>& args,
                  const std::optional<std::string>& stdin_text = std::nullopt,
                  bool trace_env = false);

}  // namespace kindred

#endif  // KINDRED_TOOLS_CLI_HPP
