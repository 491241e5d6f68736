#pragma once

namespace dmbst {

/// Command-line entry point. Returns the process exit code: 0 on success,
/// 2 on validation errors (bad flags, malformed files, broken
/// preconditions), 3 when an instance exceeds a documented hard cap, 1 on
/// anything else.
int run_cli(int argc, char** argv);

}  // namespace dmbst
