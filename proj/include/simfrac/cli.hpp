#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace simfrac {

// Command-line surface. args excludes the program name. Exit codes: 0 on
// success, 1 on domain errors (bad input file, invalid scheme, failed
// validation/audit), 2 on usage errors.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace simfrac
