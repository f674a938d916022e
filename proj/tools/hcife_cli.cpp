// hcife: convergence studies for the high-contrast immersed FEM.
//
//   hcife study [--config FILE] [--method main|e2|e3|e4|e5] [--levels A..B] ...
//   hcife sweep [--config FILE] [--level L] [--rho-plus-list 10,100,...] ...
//   hcife mesh  --level L [--out FILE]

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <list>

#include <CLI11.hpp>

#include "hcife/study.hpp"

namespace fs = std::filesystem;
using namespace hcife;

namespace {

/// A flag that is forwarded to the config as `key = value` when given.
struct Override {
  std::string key;
  std::string value;
  CLI::Option* option = nullptr;
};

struct Common {
  std::string config_path;
  std::list<Override> overrides;
  bool allow_large = false;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    overrides.push_back({key, {}, nullptr});
    overrides.back().option = app->add_option(flag, overrides.back().value, help);
  }

  StudyConfig resolve() const {
    StudyConfig cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    for (const auto& o : overrides)
      if (o.option->count() > 0) apply_setting(cfg, o.key, o.value);
    if (allow_large) cfg.allow_large = true;
    return cfg;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_path, "flat key = value config file")->check(CLI::ExistingFile);
  c.add(app, "--method", "method", "bilinear form: main, e2, e3, e4, e5");
  c.add(app, "--rho-minus", "rho_minus", "diffusion coefficient inside the inclusion side Omega^-");
  c.add(app, "--rho-plus", "rho_plus", "diffusion coefficient on Omega^+");
  c.add(app, "--gamma", "gamma", "value-jump penalty");
  c.add(app, "--gamma-f", "gamma_f", "flux penalty (e3, e5)");
  c.add(app, "--basis", "basis", "midpoint-tangent or two-point");
  c.add(app, "--space", "space", "broken or conforming coefficient sharing");
  c.add(app, "--problem", "problem", "radial or linear");
  c.add(app, "--inclusion", "inclusion", "side inside the circle: minus or plus");
  c.add(app, "--radius", "radius", "interface radius");
  c.add(app, "--tol", "solver_tol", "relative preconditioned CG residual");
  c.add(app, "--max-iter", "max_iter", "CG iteration cap (0: automatic)");
  c.add(app, "--preconditioner", "preconditioner", "jacobi or none");
  c.add(app, "--out", "out", "output directory");
  app->add_flag("--allow-large", c.allow_large, "permit levels above 5");
}

void print_estimate(int top) {
  if (top <= StudyConfig::kDeskLevel) return;
  std::cerr << "level " << top << ": estimated peak memory " << (estimated_memory_bytes(top) >> 20) << " MiB\n";
}

fs::path prepare_out(const StudyConfig& cfg) {
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw ResourceError("cannot open " + p.string() + " for writing");
  return os;
}

int run_study(const Common& c) {
  const StudyConfig cfg = c.resolve();
  cfg.validate();
  print_estimate(cfg.level_max);
  const fs::path dir = prepare_out(cfg);
  const std::string stem = "study_" + to_string(cfg.method.form);

  std::vector<ErrorReport> rows;
  for (int l = cfg.level_min; l <= cfg.level_max; ++l) {
    LevelSolution s = solve_level(cfg, l, cfg.rho_plus);
    std::cerr << "level " << l << ": " << s.report.dofs << " dofs, " << s.report.solve.iterations << " CG iterations, e0 "
              << s.report.e0 << '\n';
    const std::string tag = stem + "_l" + std::to_string(l);
    if (cfg.emit_field) emit_solution_field(dir / (tag + "_field.csv"), *s.disc, s.u);
    if (cfg.emit_mesh) {
      auto os = open_out(dir / (tag + "_mesh.txt"));
      s.disc->mesh().write(os);
    }
    if (cfg.emit_matrix) {
      auto os = open_out(dir / (tag + "_matrix.mtx"));
      s.system.matrix.write_matrix_market(os);
    }
    rows.push_back(s.report);
  }
  if (cfg.emit_csv) {
    auto os = open_out(dir / (stem + ".csv"));
    write_study_csv(os, cfg, rows);
  }
  if (cfg.emit_markdown) {
    auto os = open_out(dir / (stem + ".md"));
    write_study_markdown(os, cfg, rows);
  }
  write_study_markdown(std::cout, cfg, rows);
  return 0;
}

int run_sweep(const Common& c) {
  const StudyConfig cfg = c.resolve();
  cfg.validate();
  print_estimate(cfg.sweep_level);
  const fs::path dir = prepare_out(cfg);
  const auto rows = run_contrast_sweep(cfg, &std::cerr);
  const std::string stem = "sweep_" + to_string(cfg.method.form) + "_l" + std::to_string(cfg.sweep_level);
  if (cfg.emit_csv) {
    auto os = open_out(dir / (stem + ".csv"));
    write_sweep_csv(os, cfg, rows);
  }
  if (cfg.emit_markdown) {
    auto os = open_out(dir / (stem + ".md"));
    write_sweep_markdown(os, cfg, rows);
  }
  write_sweep_markdown(std::cout, cfg, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-contrast immersed finite elements: convergence studies"};
  app.require_subcommand(1);

  Common study_opts;
  auto* study = app.add_subcommand("study", "errors and e.o.c. over a range of levels");
  add_common(study, study_opts);
  study_opts.add(study, "--levels", "levels", "level range A..B");

  Common sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "errors over a list of rho+ at one level");
  add_common(sweep, sweep_opts);
  sweep_opts.add(sweep, "--level", "sweep_level", "mesh level");
  sweep_opts.add(sweep, "--rho-plus-list", "rho_plus_sweep", "comma separated rho+ values");

  int mesh_level = 1;
  std::string mesh_out;
  auto* mesh = app.add_subcommand("mesh", "dump the mesh of one level");
  mesh->add_option("--level", mesh_level, "mesh level")->required();
  mesh->add_option("--out", mesh_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (study->parsed()) return run_study(study_opts);
    if (sweep->parsed()) return run_sweep(sweep_opts);
    if (mesh->parsed()) {
      const TriMesh m = TriMesh::uniform(mesh_level);
      if (mesh_out.empty()) {
        m.write(std::cout);
      } else {
        auto os = open_out(mesh_out);
        m.write(os);
      }
      return 0;
    }
  } catch (const StudyError& e) {
    std::cerr << "hcife: [" << e.stage() << "] " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "hcife: [config] " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "hcife: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
