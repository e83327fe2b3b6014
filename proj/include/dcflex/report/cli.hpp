#pragma once

#include <iosfwd>

namespace dcflex::report {

/// Entry point of the `dcflex` command. Returns 0 on success, 1 on a runtime
/// error (reported as a JSON object on `err`) and 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dcflex::report
