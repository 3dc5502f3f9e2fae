#include "wavekit/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wavekit {

namespace {

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& msg) {
  std::ostringstream os;
  os << "config line " << line << ": " << key << ": " << msg;
  throw ConfigError(os.str());
}

double parse_double(const std::string& tok, int line, const std::string& key) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || tok.empty()) fail(line, key, "'" + tok + "' is not a number");
  return v;
}

int parse_int(const std::string& tok, int line, const std::string& key) {
  int v = 0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || tok.empty()) fail(line, key, "'" + tok + "' is not an integer");
  return v;
}

std::vector<double> parse_list(const std::string& value, int line, const std::string& key) {
  std::vector<double> out;
  if (trim(value).empty()) return out;
  std::stringstream ss(value);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_double(trim(tok), line, key));
  return out;
}

}  // namespace

VorticityFunction RunConfig::vorticity() const {
  if (pieces.empty()) return VorticityFunction::zero();
  return VorticityFunction(pieces);
}

Grid RunConfig::grid() const { return Grid(Nq, Np, vorticity()); }

std::vector<TestFunction> RunConfig::test_functions() const {
  if (q_centers.empty() && p_centers.empty()) {
    const auto lattice = default_lattice();
    std::vector<TestFunction> out;
    for (const auto& tf : lattice) out.push_back(TestFunction::rectangle(tf.center1(), tf.center2(), r_q, r_p));
    return out;
  }
  return bump_lattice(q_centers, p_centers, r_q, r_p);
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  cfg.source = std::string(text);
  std::set<std::string> seen;
  std::map<std::string, int> line_of;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, s, "expected 'key = value'");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (key != "vorticity.piece" && seen.count(key)) fail(line, key, "duplicate key (first on line " + std::to_string(line_of[key]) + ")");
    seen.insert(key);
    line_of[key] = line;

    auto num = [&] { return parse_double(value, line, key); };
    if (key == "physics.d") cfg.physics.d = num();
    else if (key == "physics.g") cfg.physics.g = num();
    else if (key == "physics.c") cfg.physics.c = num();
    else if (key == "physics.p0") cfg.physics.p0 = num();
    else if (key == "physics.P_atm") cfg.physics.P_atm = num();
    else if (key == "vorticity.piece") {
      const auto v = parse_list(value, line, key);
      if (v.size() < 3) fail(line, key, "expected p_lo, p_hi, c0[, c1, ...]");
      cfg.pieces.push_back({v[0], v[1], Polynomial(std::vector<double>(v.begin() + 2, v.end()))});
    } else if (key == "grid.Nq") cfg.Nq = parse_int(value, line, key);
    else if (key == "grid.Np") cfg.Np = parse_int(value, line, key);
    else if (key == "solver.mode") {
      if (value == "fixed_Q") cfg.mode = SolveMode::FixedQ;
      else if (value == "fixed_amplitude") cfg.mode = SolveMode::FixedAmplitude;
      else fail(line, key, "must be fixed_Q or fixed_amplitude");
    } else if (key == "solver.Q") cfg.Q = num();
    else if (key == "solver.amplitudes") cfg.amplitudes = parse_list(value, line, key);
    else if (key == "solver.tol") cfg.tol = num();
    else if (key == "solver.max_iter") cfg.max_iter = parse_int(value, line, key);
    else if (key == "verify.q_centers") cfg.q_centers = parse_list(value, line, key);
    else if (key == "verify.p_centers") cfg.p_centers = parse_list(value, line, key);
    else if (key == "verify.radii") {
      const auto v = parse_list(value, line, key);
      if (v.size() != 2) fail(line, key, "expected r_q, r_p");
      cfg.r_q = v[0];
      cfg.r_p = v[1];
    } else if (key == "verify.levels") cfg.levels = parse_int(value, line, key);
    else if (key == "verify.threshold") cfg.threshold = num();
    else if (key == "verify.cross_threshold") cfg.cross_threshold = num();
    else if (key == "verify.eps") cfg.eps = parse_list(value, line, key);
    else if (key == "verify.mollify_center") {
      cfg.mollify_center = parse_list(value, line, key);
      if (cfg.mollify_center.size() != 2) fail(line, key, "expected x, y/d");
    } else if (key == "verify.mollify_radii") {
      cfg.mollify_radii = parse_list(value, line, key);
      if (cfg.mollify_radii.size() != 2) fail(line, key, "expected r_x, r_y/d");
    } else if (key == "verify.defect.pressure_x") cfg.defect.pressure_x = num();
    else if (key == "verify.defect.pressure_y") cfg.defect.pressure_y = num();
    else if (key == "verify.defect.kinematic") cfg.defect.kinematic = num();
    else if (key == "output.dir") cfg.output_dir = value;
    else fail(line, key, "unknown key");
  }

  for (const char* req : {"physics.d", "physics.g", "physics.c", "physics.p0"})
    if (!seen.count(req)) throw ConfigError(std::string("config: missing required field ") + req);

  auto where = [&](const std::string& key) {
    return line_of.count(key) ? "config line " + std::to_string(line_of[key]) + ": " : std::string("config: ");
  };
  try {
    cfg.physics.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const std::string key = msg.substr(0, msg.find(' '));
    throw ConfigError(where(key) + msg);
  }
  if (cfg.mode == SolveMode::FixedQ && cfg.Q && !std::isfinite(*cfg.Q)) throw ConfigError(where("solver.Q") + "solver.Q must be finite");
  if (cfg.mode == SolveMode::FixedAmplitude && cfg.amplitudes.empty())
    throw ConfigError(where("solver.amplitudes") + "solver.amplitudes must not be empty");
  if (!(cfg.tol > 0.0)) throw ConfigError(where("solver.tol") + "solver.tol must be > 0");
  if (cfg.max_iter < 1) throw ConfigError(where("solver.max_iter") + "solver.max_iter must be >= 1");
  if (cfg.levels < 1) throw ConfigError(where("verify.levels") + "verify.levels must be >= 1");
  if (!(cfg.threshold > 0.0)) throw ConfigError(where("verify.threshold") + "verify.threshold must be > 0");
  if (cfg.q_centers.empty() != cfg.p_centers.empty() || (line_of.count("verify.q_centers") && cfg.q_centers.empty()) ||
      (line_of.count("verify.p_centers") && cfg.p_centers.empty()))
    throw ConfigError(where(cfg.q_centers.empty() ? "verify.q_centers" : "verify.p_centers") +
                      "test-function lattice is empty");
  try {
    (void)cfg.vorticity();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where("vorticity.piece") + e.what());
  }
  try {
    (void)cfg.grid();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where("grid.Np") + e.what());
  }
  try {
    (void)cfg.test_functions();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where("verify.p_centers") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace wavekit
