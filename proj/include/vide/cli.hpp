#pragma once

namespace vide {

/// Parses argv and runs the requested command.
/// Exit codes: 0 success, 2 usage/validation error, 3 numeric failure.
int run_cli(int argc, const char* const* argv);

}  // namespace vide
