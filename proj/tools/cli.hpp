#pragma once

#include <iosfwd>
#include <string>

#include "pillai/arith.hpp"

namespace pillai::cli {

/// Exit codes.
inline constexpr int kComplete = 0;
inline constexpr int kError = 1;
inline constexpr int kInconclusive = 2;

/// Runs one subcommand. Records go to --out (default `out`), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Non-negative integer in decimal or mantissa-exponent form ("8e14", "1.5e3").
/// Throws std::invalid_argument unless the value is an exact integer below 2^64.
u64 parse_count(const std::string& text);

/// Worker count: --threads if given (> 0), else PILLAI_THREADS, else hardware.
unsigned resolve_threads(unsigned flag_value);

}  // namespace pillai::cli
