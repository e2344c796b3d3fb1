#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vorrt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoPath = 1;
inline constexpr int kExitBadInput = 2;

/// Entry point behind the `vorrt` executable. `args` excludes the program
/// name. Subcommands: plan, simulate, batch, render.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vorrt::cli
