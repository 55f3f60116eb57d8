#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace srrham::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

/// Runs one invocation; args excludes the program name. Output goes to `out`
/// unless --out names a file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srrham::cli
