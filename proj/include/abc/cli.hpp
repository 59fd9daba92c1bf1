#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalid = 2,  // verification rejected the credential
  kExitIo = 3,       // file, network or protocol failure
};

// Parses argv-style arguments (without the program name) and runs the
// selected subcommand: keygen, issue, verify, serve-issuer, serve-verifier,
// bench, report.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abc::cli
