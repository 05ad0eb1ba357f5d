#pragma once

namespace isoschatten {

// Command-line driver:
//   isoschatten <experiment> [--config FILE] [--output DIR] [--seed N]
//               [--resolution N,N] [--p-list 2,3,4] [--kernel SPEC]
//               [--domain SPEC ...] [--mc-samples N]
// Flags override config fields. Exit codes: 0 all verdicts hold, 1 verdict
// failure, 2 usage/config error, 3 numerical failure.
int cli_main(int argc, const char* const* argv);

}  // namespace isoschatten
