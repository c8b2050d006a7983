#pragma once

// The expkern command-line front end, callable in-process for tests.
//
//   expkern verify <filters> <spectrum>
//   expkern build-kernel <spectrum>
//   expkern hermite <spectrum>
//   expkern subdivide <mask> <dilation> <candidates>
//   expkern eigen <filter> <eigen-spec>
//
// Options (after the subcommand): --tol, --window-pad, --convention.
// Paths may be "-" for standard input. Exit codes: 0 pass, 1 a mathematical
// check failed, 2 invalid input or usage.

#include <iosfwd>
#include <string>
#include <vector>

namespace expkern::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInvalid = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a of bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace expkern::cli
