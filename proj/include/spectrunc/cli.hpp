#pragma once

#include <iosfwd>

namespace spectrunc::cli {

/// Environment variable that relocates relative --output paths.
inline constexpr const char* output_dir_env = "SPECTRUNC_OUTPUT_DIR";

/// Runs one subcommand. Returns 0 on success, 1 on a usage or validation
/// error (message and usage on `err`), 2 when a computation contradicts a
/// proven identity or fails unexpectedly.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spectrunc::cli
