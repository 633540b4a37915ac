#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace focus::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;

// Runs focusctl with `args` (not including the program name). Normal output
// goes to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace focus::cli
