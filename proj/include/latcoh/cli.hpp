#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latcoh {

/// Command dispatcher behind the latcoh binary.  Exit codes: 0 success,
/// 2 parse error, 3 invariant violation, 4 unsupported parameter.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitUnsupported = 4;

} // namespace latcoh
