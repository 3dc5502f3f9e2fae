#include "wavekit/pipeline.hpp"

#include "wavekit/io.hpp"
#include "wavekit/laminar.hpp"
#include "wavekit/mollify.hpp"
#include "wavekit/newton.hpp"
#include "wavekit/pairing.hpp"
#include "wavekit/transform.hpp"

#include <cmath>
#include <ctime>
#include <ostream>

namespace wavekit {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path output_dir(const RunConfig& cfg, const RunOptions& opt) {
  return opt.out_dir.empty() ? fs::path(cfg.output_dir) : opt.out_dir;
}

namespace {

void say(const RunOptions& opt, const std::string& line) {
  if (opt.log && !opt.quiet) *opt.log << line << "\n";
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& cfg, const Grid& grid) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["config_hash"] = "fnv1a64:" + fnv1a_hex(cfg.source);
  m["modules"] = {{"vorticity", kVersion}, {"laminar", kVersion},     {"height_solver", kVersion},
                  {"transform", kVersion}, {"weak_verify", kVersion}, {"cli", kVersion}};
  m["grid"] = {{"Nq", grid.nq()}, {"Np", grid.np()}, {"jump_nodes", grid.jump_nodes()}};
  m["metadata"] = {{"generated_at", utc_now()}};
  write_json(dir / (command + "_manifest.json"), m);
}

FlowParameters physics(const RunConfig& cfg, double Q) {
  FlowParameters p = cfg.physics;
  p.Q = Q;
  return p;
}

std::vector<double> p_nodes(const Grid& grid) {
  std::vector<double> ps;
  for (int j = 0; j <= grid.np(); ++j) ps.push_back(grid.p(j));
  return ps;
}

fs::path field_input(const RunConfig& cfg, const RunOptions& opt) {
  return opt.field_path.empty() ? output_dir(cfg, opt) / "field.csv" : opt.field_path;
}

HeightField load_matching_field(const RunConfig& cfg, const RunOptions& opt, const Grid& grid) {
  const auto path = field_input(cfg, opt);
  HeightField hf = read_field(path);
  if (hf.nq() != grid.nq() || hf.np() != grid.np())
    throw FieldFormatError("field file " + path.string() + " is for Nq = " + std::to_string(hf.nq()) +
                           ", Np = " + std::to_string(hf.np()) + " but the config grid is Nq = " +
                           std::to_string(grid.nq()) + ", Np = " + std::to_string(grid.np()));
  return hf;
}

json report_json(const NewtonReport& r) {
  return {{"converged", r.converged},
          {"iterations", r.iterations},
          {"residual_inf", r.residual_inf},
          {"residual_history", r.residual_history},
          {"stagnation_guard", r.stagnation_guard}};
}

}  // namespace

int run_laminar(const RunConfig& cfg, const RunOptions& opt) {
  const auto dir = output_dir(cfg, opt);
  const auto v = cfg.vorticity();
  const Grid grid = cfg.grid();
  const auto lam = solve_laminar(v, cfg.physics, p_nodes(grid));

  std::string csv = "p,h,h_p\n";
  for (std::size_t k = 0; k < lam.p.size(); ++k) csv += fmt(lam.p[k]) + "," + fmt(lam.h[k]) + "," + fmt(lam.hp[k]) + "\n";
  write_text(dir / "laminar_profile.csv", csv);
  write_field(dir / "laminar_field.csv", HeightField::from_profile(grid, lam.h, lam.Q), grid);

  json s;
  s["lambda"] = lam.lambda;
  s["Q"] = lam.Q;
  s["normalization_residual"] = normalization_integral(v, cfg.physics, lam.lambda) - 1.0;
  s["lambda_lower_limit"] = lambda_lower_limit(v, cfg.physics);
  s["Np"] = grid.np();
  write_json(dir / "laminar_summary.json", s);
  write_manifest(dir, "laminar", cfg, grid);
  say(opt, "laminar: lambda = " + fmt(lam.lambda) + ", Q = " + fmt(lam.Q));
  return kExitOk;
}

int run_solve(const RunConfig& cfg, const RunOptions& opt) {
  const auto dir = output_dir(cfg, opt);
  const auto v = cfg.vorticity();
  const Grid grid = cfg.grid();
  const auto lam = solve_laminar(v, cfg.physics, p_nodes(grid));
  NewtonOptions nopt;
  nopt.tol = cfg.tol;
  nopt.max_iter = cfg.max_iter;

  json s;
  HeightField result;
  int code = kExitOk;
  if (cfg.mode == SolveMode::FixedQ) {
    const double Q = cfg.Q.value_or(lam.Q);
    const HeightOperator op(grid, v, physics(cfg, Q));
    s["mode"] = "fixed_Q";
    s["Q_source"] = cfg.Q ? "config" : "laminar";
    try {
      auto r = newton_solve(op, HeightField::zeros(grid, Q), SolveMode::FixedQ, 0.0, nopt);
      result = std::move(r.field);
      s["newton"] = report_json(r.report);
      s["iterations"] = r.report.iterations;
      s["residual_inf"] = r.report.residual_inf;
      s["min_one_plus_hp"] = r.report.min_one_plus_hp;
    } catch (const NonConvergenceError& e) {
      result = e.last;
      s["newton"] = report_json(e.report);
      s["iterations"] = e.report.iterations;
      s["residual_inf"] = e.report.residual_inf;
      s["min_one_plus_hp"] = result.min_one_plus_hp(grid);
      s["failure"] = e.what();
      code = kExitNonConvergence;
    }
  } else {
    const HeightOperator op(grid, v, physics(cfg, lam.Q));
    s["mode"] = "fixed_amplitude";
    const auto cont = continuation(op, HeightField::from_profile(grid, lam.h, lam.Q), cfg.amplitudes, nopt);
    json steps = json::array();
    for (const auto& st : cont.steps)
      steps.push_back({{"amplitude", st.amplitude},
                       {"iterations", st.report.iterations},
                       {"residual_inf", st.report.residual_inf},
                       {"Q", st.field.Q},
                       {"surface_forcing", st.field.sigma}});
    s["steps"] = steps;
    if (!cont.completed()) {
      s["failure"] = cont.failure;
      s["failed_amplitude"] = *cont.failed_amplitude;
      code = kExitNonConvergence;
    }
    if (cont.steps.empty()) {
      result = HeightField::from_profile(grid, lam.h, lam.Q);
      s["iterations"] = 0;
      s["residual_inf"] = nullptr;
      s["min_one_plus_hp"] = result.min_one_plus_hp(grid);
    } else {
      const auto& last = cont.steps.back();
      result = last.field;
      s["iterations"] = last.report.iterations;
      s["residual_inf"] = last.report.residual_inf;
      s["min_one_plus_hp"] = last.report.min_one_plus_hp;
    }
  }
  s["Q"] = result.Q;
  s["amplitude"] = result.amplitude(cfg.physics.d);
  s["surface_forcing"] = result.sigma;
  s["surface_mean"] = result.surface_mean();
  s["converged"] = code == kExitOk;
  write_field(dir / "field.csv", result, grid);
  write_json(dir / "solve_summary.json", s);
  write_manifest(dir, "solve", cfg, grid);
  say(opt, std::string("solve: ") + (code == kExitOk ? "converged" : "NOT converged") + ", Q = " + fmt(result.Q));
  return code;
}

int run_transform(const RunConfig& cfg, const RunOptions& opt) {
  const auto dir = output_dir(cfg, opt);
  const auto v = cfg.vorticity();
  const Grid grid = cfg.grid();
  const HeightField hf = load_matching_field(cfg, opt, grid);
  const auto params = physics(cfg, hf.Q);
  const auto f = reconstruct(hf, grid, v, params);

  std::string csv = "x,y,psi,u,v,P\n";
  for (int i = 0; i < f.nq; ++i)
    for (int j = 0; j <= f.np; ++j) {
      const auto k = f.index(i, j);
      csv += fmt(f.x[i]) + "," + fmt(f.y[k]) + "," + fmt(f.psi[k]) + "," + fmt(f.u[k]) + "," + fmt(f.v[k]) + "," +
             fmt(f.P[k]) + "\n";
    }
  write_text(dir / "physical_fields.csv", csv);
  std::string eta = "x,eta\n";
  for (int i = 0; i < f.nq; ++i) eta += fmt(f.x[i]) + "," + fmt(f.eta[i]) + "\n";
  write_text(dir / "eta.csv", eta);

  double roundtrip = 0.0;
  for (int i = 0; i < f.nq; ++i)
    for (int j = 0; j <= f.np; ++j)
      roundtrip = std::max(roundtrip, std::abs(invert_height(hf, grid, params, f.x[i], f.y[f.index(i, j)]) - grid.p(j)));
  const auto sum = summarize(f, v, params);
  const auto bern = bernoulli_function(f, v, params);
  json s;
  s["max_u_minus_c"] = sum.max_u_minus_c;
  s["surface_pressure_dev"] = sum.surface_pressure_dev;
  s["bernoulli_collapse_err"] = sum.bernoulli_collapse_err;
  s["bernoulli_F0"] = bern.F0;
  s["roundtrip_max_err"] = roundtrip;
  s["min_one_plus_hp"] = hf.min_one_plus_hp(grid);
  s["Q"] = hf.Q;
  s["surface_forcing"] = hf.sigma;
  write_json(dir / "transform_summary.json", s);
  write_manifest(dir, "transform", cfg, grid);
  say(opt, "transform: max(u - c) = " + fmt(sum.max_u_minus_c) + ", collapse = " + fmt(sum.bernoulli_collapse_err));
  return kExitOk;
}

int run_verify(const RunConfig& cfg, const RunOptions& opt) {
  const auto dir = output_dir(cfg, opt);
  const auto v = cfg.vorticity();
  const Grid grid = cfg.grid();
  const HeightField hf = load_matching_field(cfg, opt, grid);
  const auto params = physics(cfg, hf.Q);
  const auto family = cfg.test_functions();

  const auto reports = verify_grid_field(hf, grid, v, params, family, cfg.levels, cfg.defect);
  json forms = json::array();
  std::string csv = "formulation,center_q,center_p,radius_q,radius_p,value,normalizer\n";
  for (const auto& r : reports) {
    json per = json::array();
    for (const auto& e : r.per_testfn) {
      per.push_back({{"center", {e.center_q, e.center_p}},
                     {"radii", {e.radius_q, e.radius_p}},
                     {"value", e.value},
                     {"normalizer", e.normalizer}});
      csv += r.formulation + "," + fmt(e.center_q) + "," + fmt(e.center_p) + "," + fmt(e.radius_q) + "," +
             fmt(e.radius_p) + "," + fmt(e.value) + "," + fmt(e.normalizer) + "\n";
    }
    json ref = json::array();
    for (const auto& e : r.refinement) ref.push_back({{"level", e.level}, {"max_abs", e.max_abs}});
    forms.push_back({{"formulation", r.formulation}, {"per_testfn", per}, {"refinement", ref}, {"fitted_rates", r.fitted_rates}});
  }

  const HeightOperator op(grid, v, params);
  const auto surf = surface_identity(solver_surface_samples(op, hf), params, hf.sigma);

  json verdicts = json::array();
  bool all_pass = true;
  auto verdict = [&](const std::string& name, double value, double threshold) {
    const bool pass = value <= threshold;
    all_pass = all_pass && pass;
    verdicts.push_back({{"check", name}, {"value", value}, {"threshold", threshold}, {"pass", pass}});
    say(opt, std::string(pass ? "PASS " : "FAIL ") + name + " value=" + fmt(value) + " threshold=" + fmt(threshold));
  };
  for (const auto& r : reports)
    verdict(r.formulation, r.max_normalized(), r.formulation == "cross_identity" ? cfg.cross_threshold : cfg.threshold);
  verdict("surface_identity", surf.max_gap_rel, 1e-13);
  verdict("surface_condition", surf.max_condition_residual / std::abs(hf.Q), cfg.threshold);

  json out;
  out["formulations"] = forms;
  out["surface_identity"] = {{"max_gap_rel", surf.max_gap_rel}, {"max_condition_residual", surf.max_condition_residual}};
  out["verdicts"] = verdicts;
  out["test_functions"] = family.size();
  if (!cfg.eps.empty()) {
    const GridHeightSampler sampler(hf, grid);
    const double d = params.d;
    const auto phi = TestFunction::fluid(cfg.mollify_center[0], cfg.mollify_center[1] * d, cfg.mollify_radii[0],
                                         cfg.mollify_radii[1] * d, sampler, params);
    const auto m = mollification_rate(sampler, v, params, phi, cfg.eps, field_spacing(grid, params));
    out["mollification"] = {{"eps", m.eps},
                            {"commutator", m.commutator},
                            {"spacing", m.spacing},
                            {"fitted_slope", m.fitted_slope},
                            {"alpha_hat", m.alpha_hat},
                            {"three_alpha_minus_one_positive", m.threshold_met}};
    say(opt, "INFO mollification slope=" + fmt(m.fitted_slope) + " (diagnostic)");
  }
  write_json(dir / "pairing_report.json", out);
  write_text(dir / "pairing_report.csv", csv);
  write_manifest(dir, "verify", cfg, grid);
  return all_pass ? kExitOk : kExitVerification;
}

int run_report(const RunConfig& cfg, const RunOptions& opt) {
  const auto dir = output_dir(cfg, opt);
  json rep;
  const std::pair<const char*, const char*> parts[] = {{"laminar", "laminar_summary.json"},
                                                       {"solve", "solve_summary.json"},
                                                       {"transform", "transform_summary.json"}};
  for (const auto& [key, file] : parts) {
    if (!fs::exists(dir / file)) continue;
    json j = read_json(dir / file);
    json flat;
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it->is_primitive()) flat[it.key()] = *it;
    rep[key] = flat;
  }
  if (fs::exists(dir / "pairing_report.json")) {
    json j = read_json(dir / "pairing_report.json");
    json flat;
    for (const auto& vd : j["verdicts"]) flat[vd["check"].get<std::string>()] = vd;
    rep["verify"] = flat;
  }
  if (rep.is_null()) throw std::invalid_argument("report: no summaries found in " + dir.string());
  write_json(dir / "report.json", rep);
  write_manifest(dir, "report", cfg, cfg.grid());
  for (auto sec = rep.begin(); sec != rep.end(); ++sec)
    for (auto it = sec->begin(); it != sec->end(); ++it) {
      std::string val;
      if (it->is_object())
        val = std::string((*it)["pass"].get<bool>() ? "PASS " : "FAIL ") + (*it)["value"].dump();
      else
        val = it->dump();
      say(opt, sec.key() + "." + it.key() + "\t" + val);
    }
  return kExitOk;
}

}  // namespace wavekit
