#ifndef JLIP_CLI_HPP
#define JLIP_CLI_HPP

#include <iosfwd>

namespace jlip::cli {

// Dispatches one subcommand and writes a single JSON report document to
// `out`. Returns 0 when every contract of the invoked operation holds, 1 on a
// contract violation (the report is still emitted), 2 on input/usage errors
// (diagnostic on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jlip::cli

#endif  // JLIP_CLI_HPP
