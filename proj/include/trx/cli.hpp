#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace trx::cli {

/// Exit codes of the trx command.
enum Exit : int {
  kOk = 0,
  kReject = 1,      // input rejected, or grammar not well-formed (check)
  kUsage = 2,       // bad arguments, unreadable files, malformed grammars
  kRefused = 3,     // parse refused: grammar not well-formed
};

/// Runs the command line `args` (without the program name). `in` backs the
/// "-" input path.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace trx::cli
