#pragma once

#include "wavekit/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace wavekit {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNonConvergence = 3,
  kExitVerification = 4,
};

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  std::filesystem::path out_dir;      // overrides output.dir when non-empty
  std::filesystem::path field_path;   // transform/verify input; default <out>/field.csv
  bool quiet = false;
  std::ostream* log = nullptr;        // progress and verdict lines; null for none
};

/// Each writes its outputs plus `<command>_manifest.json` into the output
/// directory and returns an ExitCode. Validation problems are thrown as
/// ConfigError / FieldFormatError / std::invalid_argument.
int run_laminar(const RunConfig& cfg, const RunOptions& opt);
int run_solve(const RunConfig& cfg, const RunOptions& opt);
int run_transform(const RunConfig& cfg, const RunOptions& opt);
int run_verify(const RunConfig& cfg, const RunOptions& opt);
/// Merges the JSON summaries found in the output directory into report.json.
int run_report(const RunConfig& cfg, const RunOptions& opt);

std::filesystem::path output_dir(const RunConfig& cfg, const RunOptions& opt);

}  // namespace wavekit
