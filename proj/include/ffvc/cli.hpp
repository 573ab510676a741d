#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffvc::cli {

/// Exit codes: 0 success or PASS, 1 a mathematical FAIL or an inconclusive
/// search, 2 a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffvc::cli
