#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcsos::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< computation or domain failure
inline constexpr int kExitUsage = 2;    ///< bad flags

/// Runs one command line (args[0] is the program name).  All output goes
/// to `out`/`err`; file outputs are written where --out points.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcsos::cli
