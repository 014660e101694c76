#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "tsteval/commands.hpp"
#include "tsteval/error.hpp"

namespace {

using Command = std::function<int(const tsteval::RunConfig&)>;

const std::map<std::string, std::pair<Command, std::string>>& commands() {
  static const std::map<std::string, std::pair<Command, std::string>> table = {
      {"score", {tsteval::cmd_score, "compute metric scores for every instance"}},
      {"correlate", {tsteval::cmd_correlate, "correlate metric scores with human ratings"}},
      {"fit-ensemble", {tsteval::cmd_fit_ensemble, "fit Hybrid-Simulation and Hybrid-Learned models"}},
      {"overall", {tsteval::cmd_overall, "combine per-dimension metrics into overall scores"}},
      {"render-prompts", {tsteval::cmd_render_prompts, "write judge prompts for every instance"}},
      {"judge", {tsteval::cmd_judge, "query or replay an LLM judge"}},
      {"report", {tsteval::cmd_report, "correlation reports for every rated dimension"}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_st("tsteval"));
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Text style transfer evaluation engine"};
  app.require_subcommand(1);
  std::string config_path;
  tsteval::ConfigOverrides ov;
  std::string mode;
  std::string dimension;
  std::uint64_t seed = 0;
  int workers = 0;
  bool verbose = false;
  app.add_option("--config", config_path, "run configuration (JSON)")->required();
  auto* mode_opt = app.add_option("--mode", mode, "reference-free or reference-based")
                       ->check(CLI::IsMember({"reference-free", "reference-based"}));
  auto* dim_opt = app.add_option("--dimension", dimension, "style_accuracy, content_preservation or fluency");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  auto* workers_opt = app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", verbose, "debug logging");
  app.fallthrough();

  std::string chosen;
  for (const auto& [name, entry] : commands())
    app.add_subcommand(name, entry.second)->callback([&chosen, name = name] { chosen = name; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? tsteval::kExitOk : tsteval::kExitConfig;
  }
  if (verbose) spdlog::set_level(spdlog::level::debug);
  if (*mode_opt) ov.mode = mode;
  if (*dim_opt) ov.dimension = dimension;
  if (*seed_opt) ov.seed = seed;
  if (*workers_opt) ov.workers = workers;

  try {
    const auto config = tsteval::RunConfig::load(config_path, ov);
    return commands().at(chosen).first(config);
  } catch (const tsteval::ConfigError& e) {
    spdlog::error("{}", e.what());
    return tsteval::kExitConfig;
  } catch (const tsteval::DataError& e) {
    spdlog::error("{}", e.what());
    return tsteval::kExitData;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return tsteval::kExitData;
  }
}
