#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace factorx {

/// Entry point of the factorx command-line tool; args excludes the program name.
/// Returns 0 on success, 1 on a domain or computation error, 2 on bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Quick consistency checks shared with the acceptance suite. Prints one
/// line per check and returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace factorx
