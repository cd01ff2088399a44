#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entangle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Runs the `entangle` command line. `args` excludes the program name.
/// "-" as an input file name (the default) reads `in`; documents without -o
/// go to `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace entangle::cli
