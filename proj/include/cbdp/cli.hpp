#pragma once

#include <ostream>

namespace cbdp {

/// Runs the command-line interface. Returns 0 on success, 1 when a verification or a
/// computation fails, 2 on usage or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cbdp
