#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flpe::harness
{

enum exit_code : int
{
    exit_ok = 0,
    exit_input_error = 2,
    exit_precondition = 3,
    exit_resource = 4,
};

// Full command line front end: `flpe <subcommand> ...`. Writes reports to
// `out` and diagnostics to `err`; returns the process exit code.
int run_cli( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

// "CPL: TRIVIAL | mbc: inconsistent, non-trivial" style verdict for one logic.
[[nodiscard]] std::string outcome_verdict( const std::string& logic_name, bool trivial, bool inconsistent );

} // namespace flpe::harness
