#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tbg {

/// Batch command-line driver. Data goes to out, diagnostics to err.
/// Exit codes: 0 success, 1 usage or internal error, 2 certification mismatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tbg
