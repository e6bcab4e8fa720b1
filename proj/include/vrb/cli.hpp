#pragma once

namespace vrb::cli {

/// Parses and executes one command line. Returns the process exit code:
/// 0 success, 1 benchmark sweep with failed configurations, 2 startup or
/// usage error.
int run(int argc, char** argv);

}  // namespace vrb::cli
