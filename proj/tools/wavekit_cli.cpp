// wavekit: batch front-end for laminar / solve / transform / verify / report runs.

#include "wavekit/io.hpp"
#include "wavekit/laminar.hpp"
#include "wavekit/newton.hpp"
#include "wavekit/pipeline.hpp"
#include "wavekit/transform.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Steady periodic rotational water waves: solve, transform and verify"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string field_path;
  bool quiet = false;

  auto add_common = [&](CLI::App* sub, bool with_field) {
    sub->add_option("--config", config_path, "run configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_flag("--quiet", quiet, "suppress progress and verdict lines");
    if (with_field) sub->add_option("--field", field_path, "field CSV (default <out>/field.csv)");
  };
  auto* laminar = app.add_subcommand("laminar", "laminar profile, lambda and Q");
  auto* solve = app.add_subcommand("solve", "Newton solve of the height system");
  auto* transform = app.add_subcommand("transform", "reconstruct physical fields from a height field");
  auto* verify = app.add_subcommand("verify", "weak-form pairings and identity checks");
  auto* report = app.add_subcommand("report", "merge JSON summaries into report.json");
  add_common(laminar, false);
  add_common(solve, false);
  add_common(transform, true);
  add_common(verify, true);
  add_common(report, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : wavekit::kExitValidation;
  }

  wavekit::RunOptions opt;
  opt.out_dir = out_dir;
  opt.field_path = field_path;
  opt.quiet = quiet;
  opt.log = &std::cout;

  try {
    const auto cfg = wavekit::load_config(config_path);
    if (*laminar) return wavekit::run_laminar(cfg, opt);
    if (*solve) return wavekit::run_solve(cfg, opt);
    if (*transform) return wavekit::run_transform(cfg, opt);
    if (*verify) return wavekit::run_verify(cfg, opt);
    if (*report) return wavekit::run_report(cfg, opt);
  } catch (const wavekit::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wavekit::kExitValidation;
  } catch (const wavekit::FieldFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wavekit::kExitValidation;
  } catch (const wavekit::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wavekit::kExitNonConvergence;
  } catch (const wavekit::NoBracketError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wavekit::kExitValidation;
  } catch (const wavekit::StagnationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wavekit::kExitValidation;
  } catch (const wavekit::DegenerateCellError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wavekit::kExitValidation;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wavekit::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return wavekit::kExitValidation;
}
