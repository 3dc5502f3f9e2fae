#pragma once

#include "wavekit/height_operator.hpp"
#include "wavekit/pairing.hpp"
#include "wavekit/vorticity.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wavekit {

/// Invalid configuration; the message names the line and/or field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `section.key = value` run configuration. Lines starting with '#' are
/// comments; lists are comma separated; `vorticity.piece` may repeat.
struct RunConfig {
  FlowParameters physics;
  std::vector<VorticityPiece> pieces;  // empty: zero vorticity

  int Nq = 64;
  int Np = 64;

  SolveMode mode = SolveMode::FixedQ;
  std::optional<double> Q;             // fixed_Q head; laminar Q when absent
  std::vector<double> amplitudes{0.0};  // fixed_amplitude schedule
  double tol = 1e-10;
  int max_iter = 50;

  std::vector<double> q_centers;  // empty: default lattice
  std::vector<double> p_centers;
  double r_q = 0.7853981633974483;
  double r_p = 0.2;
  int levels = 3;
  double threshold = 1e-4;
  double cross_threshold = 1e-10;
  std::vector<double> eps;                    // mollification scales, empty: skipped
  std::vector<double> mollify_center{1.5707963267948966, -0.5};  // (x, y / d); off x = 0, where symmetry zeroes the commutator
  std::vector<double> mollify_radii{0.7853981633974483, 0.2};
  FieldDefect defect;

  std::string output_dir = "out";
  std::string source;  // raw text, hashed into the manifest

  VorticityFunction vorticity() const;
  Grid grid() const;
  std::vector<TestFunction> test_functions() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace wavekit
