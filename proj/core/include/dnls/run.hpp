#pragma once

#include <string>

namespace dnls::run {

// Command entry points shared by the CLI and the tests. Each returns the
// process exit status: 0 success, 1 config/input error, 2 non-convergence.
// User errors are reported on stderr as messages, never as stack dumps.

int solve(const std::string& config_path);
int verify(const std::string& result_path);
int sweep(const std::string& config_path);
int truncate(const std::string& config_path);
int compare(const std::string& config_path);
int export_plotdata(const std::string& result_path, const std::string& out_path);

/// Log verbosity from the DNLS_LOG environment variable (0 silent, 1 default,
/// 2 chatty).
int log_level();

} // namespace dnls::run
