#include <cstdlib>
#include <iostream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  std::optional<std::string> stdin_text;
  for (const std::string& a : args) {
    if (a == "-") {
      stdin_text.emplace(std::istreambuf_iterator<char>(std::cin),
                         std::istreambuf_iterator<char>());
      break;
    }
  }
  const char* env = std::getenv("KINDRED_TRACE");
  const bool trace = env != nullptr && std::string_view(env) == "1";

  const kindred::CliResult r = kindred::run_cli(args, stdin_text, trace);
  std::cout << r.out << std::flush;
  std::cerr << r.err << std::flush;
  return r.exit_code;
}
