#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sqrtmod::cli {

/// Dispatches one command line. Exit codes: 0 success (a non-residue
/// verdict is a valid answer), 1 usage error, 2 computational failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace sqrtmod::cli
