#pragma once

#include <cstdint>
#include <string>

namespace breuil {

// One CLI run, mirroring the command-line flags. Used both by the binary and
// in-process by the acceptance harness (the self-test must be byte-identical
// between the two paths).
struct RunOptions {
    std::string command;         // validate | gauge | gauge-modp | monodromy |
                                 // etale | fl | dims | selftest
    std::string input_path;      // empty: built-in defaults (no frobenius matrix)
    std::uint32_t precision = 0; // override precision.padic when nonzero
    std::uint32_t fil = 0;       // override precision.fil when nonzero
    std::int64_t seed = -1;      // override seed when >= 0
    std::string format = "text"; // text | machine
    bool transcript = false;     // include per-step records in gauge reports
};

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 input error, 2 computation failure, 3 no convergence
    std::string report; // rendered in the requested format, newline-terminated
};

// Execute one command exactly as the CLI does. Never throws: errors are mapped to
// exit codes and an error report. Identical options (and input document) produce a
// byte-identical machine report.
RunResult run_command(const RunOptions& opt);

} // namespace breuil
