#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tsteval/config.hpp"
#include "tsteval/score_table.hpp"

namespace tsteval {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitPartial = 3;

// Each command writes its outputs plus manifest_<command>.json under the
// configured output directory and returns a process exit code.
int cmd_score(const RunConfig& config);
int cmd_correlate(const RunConfig& config);
int cmd_fit_ensemble(const RunConfig& config);
int cmd_overall(const RunConfig& config);
int cmd_render_prompts(const RunConfig& config);
int cmd_judge(const RunConfig& config);
int cmd_report(const RunConfig& config);

/// Column-wise union of tables over the same rows in the same order.
ScoreTable merge_score_tables(const std::vector<ScoreTable>& tables);

}  // namespace tsteval
