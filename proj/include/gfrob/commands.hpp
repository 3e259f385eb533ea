#ifndef GFROB_COMMANDS_HPP
#define GFROB_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gfrob/bundle.hpp"

namespace gfrob {

// Exit codes of the command line tool.
constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;

struct CommandRequest {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::string> side;  // adjoint-check
};

struct CommandOutput {
  int exit_code = kExitPass;
  Json report;  // loadable bundle: schema, field, optional sections, "report"
};

// Throws UnknownName, ValidationError, NotApplicable, std::invalid_argument on bad requests.
CommandOutput execute(const AnyBundle& bundle, const CommandRequest& req);

// text: indented key/value listing of the "report" member; json: the whole document.
std::string render_report(const Json& report, const std::string& format);

// Full command line (argv[0] is ignored): parses, loads, executes, writes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gfrob

#endif
