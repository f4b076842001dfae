#pragma once

namespace mappergpt {

/// Entry point for the mappergpt command-line tool. Subcommands: lexmatch,
/// categorize-mappings, eval, threshold-scan, make-testset, describe.
/// Returns the process exit code: 0 success, 1 usage error, 2 data error,
/// 3 backend error.
int run_cli(int argc, const char* const* argv);

} // namespace mappergpt
