#pragma once

#include <string>
#include <vector>

namespace biphoton {

/// Runs one CLI invocation. Returns 0 on success, 2 on input/usage errors,
/// 3 on numeric failures. Artifacts are written to disk; diagnostics go to the
/// given streams.
int cli_dispatch(const std::vector<std::string>& args);
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biphoton
