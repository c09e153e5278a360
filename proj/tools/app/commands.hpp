#pragma once

#include "config.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <iosfwd>
#include <map>
#include <string>

namespace goldshift::app {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "goldshift-report";
inline constexpr int kReportSchemaVersion = 1;

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kInputError = 2 };

struct CommandResult {
  int exit_code = kSuccess;
  Json report;
  std::map<std::string, std::string> files;  // companion files by name (CSV series, spec)
};

enum class ExperimentKind { Rn, RatioSet, Torus, All };
ExperimentKind parse_experiment_kind(const std::string& s);

CommandResult cmd_construct(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_experiment(const RunConfig& cfg, ExperimentKind kind);

// Runs a command, turning input errors into exit code 2 and construction or
// precision failures into exit code 1 with a diagnostic section.
CommandResult run_command(const std::string& name, const RunConfig& cfg,
                          const std::function<CommandResult()>& body);

// Writes report.json and companions under cfg.out, or the report to `out`.
void emit(const CommandResult& r, const RunConfig& cfg, std::ostream& out);

}  // namespace goldshift::app
