#pragma once

/*
 * Command layer shared by the CLI and the language bindings: each command
 * takes a parsed spec file, runs the relevant library routines and returns a
 * JSON report plus a process exit code (0 definitive, 2 unknown/inconclusive;
 * errors are thrown and map to exit code 1 in the callers).
 */

#include <string>

#include <json.hpp>

#include "shiftlab/analysis.hpp"
#include "shiftlab/specfile.hpp"

namespace shiftlab {

inline constexpr const char* tool_version = "0.1.0";

struct CommandResult {
    nlohmann::json report;
    int exit_code = 0;
};

CommandResult cmd_analyze(const SpecFile& sf, const AnalysisOptions& opts = {});
CommandResult cmd_nonempty(const SpecFile& sf, const AnalysisOptions& opts = {});
CommandResult cmd_finite(const SpecFile& sf, const AnalysisOptions& opts = {});
CommandResult cmd_epairs(const SpecFile& sf, const SearchBudget& budget = {});
CommandResult cmd_higher_block(const SpecFile& sf, const Coords& window,
                               const SearchBudget& budget = {});
CommandResult cmd_periodic(const SpecFile& sf, int p, int q, const SearchBudget& budget = {});
CommandResult cmd_oracle(const SpecFile& sf, const Coords& periods,
                         const SearchBudget& budget = {}, long long list_limit = 16);
CommandResult cmd_growth(const SpecFile& sf, int n_max, const SearchBudget& budget = {});

// drop fields that vary run to run (timing) so reports can be compared
nlohmann::json strip_volatile(nlohmann::json report);

} // namespace shiftlab
