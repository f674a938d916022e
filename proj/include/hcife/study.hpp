#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcife/assembly.hpp"
#include "hcife/norms.hpp"

namespace hcife {

enum class ProblemKind { Radial, Linear };

struct StudyConfig {
  int level_min = 1;
  int level_max = 5;
  double rho_minus = 1.0;
  double rho_plus = 1e4;
  std::vector<double> rho_plus_sweep{1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  int sweep_level = 4;
  MethodVariant method;
  BasisVariant basis = BasisVariant::MidpointTangent;
  GlobalSpace space = GlobalSpace::Broken;
  ProblemKind problem = ProblemKind::Radial;
  double radius = 1.0 / 3.0;
  double alpha = 2.0;
  Side inclusion = Side::Minus;
  double solver_tol = 1e-12;
  int max_iter = 0;
  bool jacobi = true;
  std::string out_dir = "out";
  bool emit_csv = true;
  bool emit_markdown = true;
  bool emit_mesh = false;
  bool emit_matrix = false;
  bool emit_field = false;
  bool allow_large = false;

  /// Largest level run without --allow-large.
  static constexpr int kDeskLevel = 5;

  void validate() const;
};

/// Applies one `key = value` setting; throws ParameterError on unknown keys or
/// malformed values.
void apply_setting(StudyConfig& cfg, std::string_view key, std::string_view value);
/// Flat `key = value` text, `#` starts a comment.
void parse_config(StudyConfig& cfg, std::string_view text);
void load_config_file(StudyConfig& cfg, const std::filesystem::path& path);
/// Resolved settings, one `key = value` per line, parseable by parse_config.
std::string config_text(const StudyConfig& cfg);

std::string to_string(BasisVariant v);
std::optional<std::pair<int, int>> parse_level_range(std::string_view s);

/// Failure inside a study run, tagged with level and stage.
class StudyError : public Error {
 public:
  StudyError(int level, std::string stage, const std::string& what)
      : Error("level " + std::to_string(level) + ", " + stage + ": " + what), level_(level), stage_(std::move(stage)) {}
  int level() const { return level_; }
  const std::string& stage() const { return stage_; }

 private:
  int level_;
  std::string stage_;
};

ProblemSpec make_problem(const StudyConfig& cfg, double rho_plus);

struct LevelSolution {
  std::optional<Discretization> disc;
  ProblemSpec spec;
  SparseSystem system;
  std::vector<double> u;  // all coefficients, boundary included
  ErrorReport report;
};

/// mesh, cut, basis, assemble, solve and measure one level.
LevelSolution solve_level(const StudyConfig& cfg, int level, double rho_plus);

std::vector<ErrorReport> run_convergence_study(const StudyConfig& cfg, std::ostream* log = nullptr);

struct SweepRow {
  double rho_plus = 0.0;
  ErrorReport errors;
};
std::vector<SweepRow> run_contrast_sweep(const StudyConfig& cfg, std::ostream* log = nullptr);

inline constexpr std::string_view kStudyCsvHeader =
    "level,h,dofs,e0,eoc0,einf,eocinf,e1,eoc1,e1inf,eoc1inf,ebar1,eocbar1,ebar1inf,eocbar1inf,etilde1inf,"
    "eoctilde1inf,enrm,eocn";
inline constexpr std::string_view kSweepCsvHeader = "rho_plus,level,h,dofs,e0,ebar1inf,e1";

void write_study_csv(std::ostream& os, const StudyConfig& cfg, const std::vector<ErrorReport>& rows);
void write_study_markdown(std::ostream& os, const StudyConfig& cfg, const std::vector<ErrorReport>& rows);
void write_sweep_csv(std::ostream& os, const StudyConfig& cfg, const std::vector<SweepRow>& rows);
void write_sweep_markdown(std::ostream& os, const StudyConfig& cfg, const std::vector<SweepRow>& rows);

/// CSV `x,y,side,value`: each cell's vertices on their own side, and for cut
/// cells both branches at the two crossings. side is -1 or 1.
void emit_solution_field(std::ostream& os, const Discretization& disc, std::span<const double> u);
void emit_solution_field(const std::filesystem::path& path, const Discretization& disc, std::span<const double> u);

}  // namespace hcife
