// SPDX-License-Identifier: MIT
#pragma once

#include <ostream>

#include "gclt/config.hpp"

namespace gclt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerdictFailed = 2;

/// Environment variable naming the default output root (default "runs").
inline constexpr const char* kOutputRootEnv = "GCLT_OUTPUT_ROOT";

/// Executes one command. Writes CSV/SVG artefacts, the resolved config and a
/// manifest into the output directory. Returns 0, 1 (error, one
/// "error: <Code>: <message>" line on `err`) or 2 (a verdict failed).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gclt
