#include "hcife/study.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hcife {

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

void echo_config(std::ostream& os, const StudyConfig& cfg, std::string_view prefix) {
  std::istringstream in(config_text(cfg));
  for (std::string line; std::getline(in, line);) os << prefix << line << '\n';
}

std::string eoc_cell(const std::optional<double>& e) { return e ? fmt("%.4f", *e) : "nan"; }

template <class Get>
std::vector<std::optional<double>> column_eoc(const std::vector<ErrorReport>& rows, Get get) {
  std::vector<double> e, h;
  for (const auto& r : rows) {
    e.push_back(get(r));
    h.push_back(r.h);
  }
  return eoc(e, h);
}

}  // namespace

ProblemSpec make_problem(const StudyConfig& cfg, double rho_plus) {
  if (cfg.problem == ProblemKind::Linear) {
    auto curve = std::make_shared<Circle>(Vec2::Zero(), cfg.radius, cfg.inclusion);
    return linear_problem({cfg.rho_minus, rho_plus}, curve, Vec2(1.0, 0.0));
  }
  return exact_solution_case1(cfg.rho_minus, rho_plus, cfg.alpha, cfg.radius, cfg.inclusion);
}

LevelSolution solve_level(const StudyConfig& cfg, int level, double rho_plus) {
  LevelSolution out;
  std::string stage = "problem";
  try {
    out.spec = make_problem(cfg, rho_plus);
    stage = "mesh";
    TriMesh mesh = TriMesh::uniform(level);
    stage = "geometry";
    out.disc.emplace(std::move(mesh), out.spec.curve, out.spec.rho, cfg.basis, cfg.space);
    stage = "assembly";
    out.system = assemble(*out.disc, out.spec, cfg.method);
    stage = "solve";
    const SolveResult sol = solve(out.system.matrix, out.system.rhs, {cfg.solver_tol, cfg.max_iter, cfg.jacobi});
    out.u = out.system.expand(sol.x);
    stage = "errors";
    out.report = compute_errors(*out.disc, out.u, out.spec);
    out.report.dofs = out.system.num_dofs();
    out.report.solve = sol.report;
  } catch (const StudyError&) {
    throw;
  } catch (const Error& e) {
    throw StudyError(level, stage, e.what());
  }
  return out;
}

std::vector<ErrorReport> run_convergence_study(const StudyConfig& cfg, std::ostream* log) {
  cfg.validate();
  std::vector<ErrorReport> rows;
  for (int l = cfg.level_min; l <= cfg.level_max; ++l) {
    const auto t0 = std::chrono::steady_clock::now();
    LevelSolution s = solve_level(cfg, l, cfg.rho_plus);
    if (log) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      *log << "level " << l << ": " << s.report.dofs << " dofs, " << s.report.solve.iterations << " CG iterations, "
           << fmt("%.2f", secs) << " s, e0 = " << fmt("%.3e", s.report.e0) << '\n';
    }
    rows.push_back(s.report);
  }
  return rows;
}

std::vector<SweepRow> run_contrast_sweep(const StudyConfig& cfg, std::ostream* log) {
  cfg.validate();
  std::vector<SweepRow> rows;
  for (double rp : cfg.rho_plus_sweep) {
    LevelSolution s = solve_level(cfg, cfg.sweep_level, rp);
    if (log)
      *log << "rho+ = " << fmt("%g", rp) << ": " << s.report.solve.iterations
           << " CG iterations, e0 = " << fmt("%.3e", s.report.e0) << '\n';
    rows.push_back({rp, s.report});
  }
  return rows;
}

void write_study_csv(std::ostream& os, const StudyConfig& cfg, const std::vector<ErrorReport>& rows) {
  echo_config(os, cfg, "# ");
  os << kStudyCsvHeader << '\n';
  const std::vector<double ErrorReport::*> cols{&ErrorReport::e0,    &ErrorReport::einf,     &ErrorReport::e1,
                                                &ErrorReport::e1inf, &ErrorReport::ebar1,    &ErrorReport::ebar1inf,
                                                &ErrorReport::etilde1inf, &ErrorReport::enrm};
  std::vector<std::vector<std::optional<double>>> rates;
  for (auto m : cols) rates.push_back(column_eoc(rows, [m](const ErrorReport& r) { return r.*m; }));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << r.level << ',' << fmt("%.10e", r.h) << ',' << r.dofs;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      os << ',' << fmt("%.6e", r.*cols[c]) << ',';
      if (i > 0) os << eoc_cell(rates[c][i - 1]);
    }
    os << '\n';
  }
}

void write_study_markdown(std::ostream& os, const StudyConfig& cfg, const std::vector<ErrorReport>& rows) {
  os << "<!--\n";
  echo_config(os, cfg, "");
  os << "-->\n\n";
  struct Col {
    const char* name;
    double ErrorReport::*member;
  };
  const std::array<std::array<Col, 4>, 2> tables{{
      {{{"e0", &ErrorReport::e0}, {"einf", &ErrorReport::einf}, {"e1", &ErrorReport::e1},
        {"e1inf", &ErrorReport::e1inf}}},
      {{{"ebar1", &ErrorReport::ebar1}, {"ebar1inf", &ErrorReport::ebar1inf},
        {"etilde1inf", &ErrorReport::etilde1inf}, {"enrm", &ErrorReport::enrm}}},
  }};
  for (std::size_t t = 0; t < tables.size(); ++t) {
    if (t) os << '\n';
    os << "| l |";
    for (const auto& c : tables[t]) os << ' ' << c.name << " | eoc |";
    os << "\n|---|";
    for (std::size_t k = 0; k < tables[t].size(); ++k) os << "---|---|";
    os << '\n';
    std::vector<std::vector<std::optional<double>>> rates;
    for (const auto& c : tables[t]) {
      auto m = c.member;
      rates.push_back(column_eoc(rows, [m](const ErrorReport& r) { return r.*m; }));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << "| " << rows[i].level << " |";
      for (std::size_t k = 0; k < tables[t].size(); ++k) {
        os << ' ' << fmt("%.1e", rows[i].*tables[t][k].member) << " | ";
        if (i > 0) os << (rates[k][i - 1] ? fmt("%.2f", *rates[k][i - 1]) : std::string("nan"));
        os << " |";
      }
      os << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& os, const StudyConfig& cfg, const std::vector<SweepRow>& rows) {
  echo_config(os, cfg, "# ");
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    os << fmt("%g", r.rho_plus) << ',' << r.errors.level << ',' << fmt("%.10e", r.errors.h) << ',' << r.errors.dofs
       << ',' << fmt("%.6e", r.errors.e0) << ',' << fmt("%.6e", r.errors.ebar1inf) << ','
       << fmt("%.6e", r.errors.e1) << '\n';
  }
}

void write_sweep_markdown(std::ostream& os, const StudyConfig& cfg, const std::vector<SweepRow>& rows) {
  os << "<!--\n";
  echo_config(os, cfg, "");
  os << "-->\n\n";
  os << "| rho+ | e0 | ebar1inf | e1 |\n|---|---|---|---|\n";
  for (const auto& r : rows)
    os << "| " << fmt("%g", r.rho_plus) << " | " << fmt("%.1e", r.errors.e0) << " | "
       << fmt("%.1e", r.errors.ebar1inf) << " | " << fmt("%.1e", r.errors.e1) << " |\n";
}

void emit_solution_field(std::ostream& os, const Discretization& disc, std::span<const double> u) {
  const TriMesh& mesh = disc.mesh();
  os << "x,y,side,value\n";
  auto row = [&](const Vec2& x, Side s, double v) {
    os << fmt("%.17g", x.x()) << ',' << fmt("%.17g", x.y()) << ',' << (s == Side::Minus ? -1 : 1) << ','
       << fmt("%.17g", v) << '\n';
  };
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const IFEBasis b = disc.basis(c);
    const auto ul = disc.local_values(u, c);
    auto value = [&](Side s, const Vec2& x) {
      const auto w = b.values(s, x);
      return ul[0] * w[0] + ul[1] * w[1] + ul[2] * w[2];
    };
    const auto pts = mesh.cell_points(c);
    if (!disc.is_cut(c)) {
      const Side s = side_of(disc.classification(c));
      for (int k = 0; k < 3; ++k) row(pts[k], s, value(s, pts[k]));
      continue;
    }
    const CutElement& ce = disc.cut(c);
    for (int k = 0; k < 3; ++k) row(pts[k], ce.vertex_side[k], value(ce.vertex_side[k], pts[k]));
    for (const Crossing& cr : ce.crossings)
      for (Side s : both_sides) row(cr.point, s, value(s, cr.point));
  }
}

void emit_solution_field(const std::filesystem::path& path, const Discretization& disc, std::span<const double> u) {
  std::ofstream os(path);
  if (!os) throw ResourceError("cannot open " + path.string() + " for writing");
  emit_solution_field(os, disc, u);
  os.flush();
  if (!os) throw ResourceError("write to " + path.string() + " failed");
}

}  // namespace hcife
