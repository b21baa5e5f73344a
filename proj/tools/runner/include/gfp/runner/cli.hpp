#pragma once

#include <iosfwd>

namespace gfp::runner {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNonConvergence = 3;

/// Entry point of the gfp tool:
///   gfp run <config> [--output DIR]
///   gfp validate <config>
///   gfp report <dir>
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gfp::runner
