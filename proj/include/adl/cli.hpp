#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adl {

// adl-engine <subcommand> --config <path> [--out <dir>] [--seed <u64>] [overrides]
// Subcommands: validate ingest recognize affect cluster train recommend evaluate pipeline.
// Returns the process exit status.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adl
