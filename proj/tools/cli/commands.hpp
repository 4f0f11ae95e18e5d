#pragma once

#include <string>
#include <vector>

#include "cli/run_config.hpp"

namespace alphafuse::cli {

const std::vector<std::string>& command_names();

// Runs one pipeline stage, writing artifacts and a manifest under `out_dir`.
// Outputs already written are removed if the command throws.
void run_command(const std::string& command, const RunConfig& config, const std::string& out_dir);

// Exit status for an error kind: 1 usage/config, 2 data, 3 numerical.
int exit_code_for(const std::string& kind);

}  // namespace alphafuse::cli
