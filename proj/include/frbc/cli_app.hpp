#ifndef FRBC_CLI_APP_HPP
#define FRBC_CLI_APP_HPP

namespace frbc {

/// Command-line entry point (solve / table / convergence / residual-profile).
/// Exit codes: 0 ok, 2 linear-algebra failure, 3 admissibility failure,
/// 64 usage error.
int cli_main(int argc, const char* const* argv);

} // namespace frbc

#endif
