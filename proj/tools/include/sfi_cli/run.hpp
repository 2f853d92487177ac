#pragma once

#include <ostream>

#include "sfi_cli/config.hpp"

namespace sfi::cli {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_accuracy = 2 };

// Validates, computes and writes the artifact. Output path "-" goes to `out`;
// diagnostics go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err, unsigned threads = 1);

// Threads from SFI_THREADS, 1 when unset or unreadable.
unsigned threads_from_env();

// Command-line entry point; argv[0] is the program name.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sfi::cli
