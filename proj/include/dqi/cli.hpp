#pragma once

namespace dqi {

// Parses argv and dispatches to one of the verbs (gen, simulate, baseline,
// decode-bench, analyze, verify). Returns the process exit code: 0 success,
// 2 contract violation, 3 budget exceeded, 4 I/O failure, 1 failed verify.
int run_cli(int argc, char** argv);

}  // namespace dqi
