#pragma once

#include <filesystem>
#include <iosfwd>

#include "wiretap/solver.hpp"

namespace wiretap {

// Exit codes: 0 success, 1 usage error, 2 numerical or input failure (the
// error kind name goes to `err`).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Solver settings from a JSON object whose keys mirror the SolverConfig
// field names; absent keys keep their defaults. "init_scheme" is one of
// "uniform_identity", "zero".
SolverConfig load_solver_config(const std::filesystem::path& path);

}  // namespace wiretap
