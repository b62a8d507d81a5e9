#pragma once

#include <iosfwd>

namespace odhl {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBlowUp = 2;  // also vacuum
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

// odhl run | linear-verify | fit | lp | analyze
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace odhl
