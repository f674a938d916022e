#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hcife/study.hpp"

namespace hcife {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ParameterError("invalid value '" + std::string(value) + "' for " + std::string(key));
}

double to_double(std::string_view key, std::string_view v) {
  v = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v);
  return out;
}

int to_int(std::string_view key, std::string_view v) {
  v = trim(v);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v);
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, v);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_string(BasisVariant v) { return v == BasisVariant::TwoPoint ? "two-point" : "midpoint-tangent"; }

std::optional<std::pair<int, int>> parse_level_range(std::string_view s) {
  s = trim(s);
  int a = 0;
  int b = 0;
  const auto dots = s.find("..");
  const char* end = s.data() + s.size();
  if (dots == std::string_view::npos) {
    const auto [p, ec] = std::from_chars(s.data(), end, a);
    if (ec != std::errc() || p != end) return std::nullopt;
    return std::pair{a, a};
  }
  const auto [p1, ec1] = std::from_chars(s.data(), s.data() + dots, a);
  const auto [p2, ec2] = std::from_chars(s.data() + dots + 2, end, b);
  if (ec1 != std::errc() || p1 != s.data() + dots || ec2 != std::errc() || p2 != end) return std::nullopt;
  return std::pair{a, b};
}

void StudyConfig::validate() const {
  if (level_min < 1 || level_max < level_min) throw ParameterError("levels must satisfy 1 <= l_min <= l_max");
  if (!(rho_minus > 0.0)) throw ParameterError("rho_minus must be positive");
  if (!(rho_plus >= rho_minus)) throw ParameterError("rho_plus must be >= rho_minus");
  for (double r : rho_plus_sweep)
    if (!(r >= rho_minus)) throw ParameterError("every rho_plus in the sweep must be >= rho_minus");
  if (sweep_level < 1) throw ParameterError("sweep_level must be >= 1");
  method.validate();
  if (!(radius > 0.0 && radius < 1.0)) throw ParameterError("radius must lie in (0,1)");
  if (!(solver_tol > 0.0 && solver_tol < 1.0)) throw ParameterError("solver_tol must lie in (0,1)");
  if (max_iter < 0) throw ParameterError("max_iter must be >= 0");
  const int top = std::max(level_max, sweep_level);
  if (top > kDeskLevel && !allow_large)
    throw ParameterError("level " + std::to_string(top) + " needs --allow-large (about " +
                         std::to_string(estimated_memory_bytes(top) >> 20) + " MiB)");
}

void apply_setting(StudyConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "levels") {
    const auto r = parse_level_range(value);
    if (!r) bad_value(key, value);
    cfg.level_min = r->first;
    cfg.level_max = r->second;
  } else if (key == "level_min") {
    cfg.level_min = to_int(key, value);
  } else if (key == "level_max") {
    cfg.level_max = to_int(key, value);
  } else if (key == "rho_minus") {
    cfg.rho_minus = to_double(key, value);
  } else if (key == "rho_plus") {
    cfg.rho_plus = to_double(key, value);
  } else if (key == "rho_plus_sweep") {
    cfg.rho_plus_sweep.clear();
    std::size_t pos = 0;
    while (pos <= value.size()) {
      const auto comma = value.find(',', pos);
      const auto item = value.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      cfg.rho_plus_sweep.push_back(to_double(key, item));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  } else if (key == "sweep_level") {
    cfg.sweep_level = to_int(key, value);
  } else if (key == "method") {
    const auto v = parse_form_variant(value);
    if (!v) bad_value(key, value);
    cfg.method.form = *v;
  } else if (key == "gamma") {
    cfg.method.gamma = to_double(key, value);
  } else if (key == "gamma_f") {
    cfg.method.gamma_f = to_double(key, value);
  } else if (key == "basis") {
    if (value == "midpoint-tangent")
      cfg.basis = BasisVariant::MidpointTangent;
    else if (value == "two-point")
      cfg.basis = BasisVariant::TwoPoint;
    else
      bad_value(key, value);
  } else if (key == "space") {
    const auto v = parse_global_space(value);
    if (!v) bad_value(key, value);
    cfg.space = *v;
  } else if (key == "problem") {
    if (value == "radial")
      cfg.problem = ProblemKind::Radial;
    else if (value == "linear")
      cfg.problem = ProblemKind::Linear;
    else
      bad_value(key, value);
  } else if (key == "radius") {
    cfg.radius = to_double(key, value);
  } else if (key == "alpha") {
    cfg.alpha = to_double(key, value);
  } else if (key == "inclusion") {
    if (value == "minus")
      cfg.inclusion = Side::Minus;
    else if (value == "plus")
      cfg.inclusion = Side::Plus;
    else
      bad_value(key, value);
  } else if (key == "solver_tol") {
    cfg.solver_tol = to_double(key, value);
  } else if (key == "max_iter") {
    cfg.max_iter = to_int(key, value);
  } else if (key == "preconditioner") {
    if (value == "jacobi")
      cfg.jacobi = true;
    else if (value == "none")
      cfg.jacobi = false;
    else
      bad_value(key, value);
  } else if (key == "out") {
    cfg.out_dir = std::string(value);
  } else if (key == "emit_csv") {
    cfg.emit_csv = to_bool(key, value);
  } else if (key == "emit_markdown") {
    cfg.emit_markdown = to_bool(key, value);
  } else if (key == "emit_mesh") {
    cfg.emit_mesh = to_bool(key, value);
  } else if (key == "emit_matrix") {
    cfg.emit_matrix = to_bool(key, value);
  } else if (key == "emit_field") {
    cfg.emit_field = to_bool(key, value);
  } else if (key == "allow_large") {
    cfg.allow_large = to_bool(key, value);
  } else {
    throw ParameterError("unknown config key '" + std::string(key) + "'");
  }
}

void parse_config(StudyConfig& cfg, std::string_view text) {
  int lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParameterError("config line " + std::to_string(lineno) + ": expected key = value");
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ParameterError& e) {
      throw ParameterError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void load_config_file(StudyConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  parse_config(cfg, ss.str());
}

std::string config_text(const StudyConfig& cfg) {
  std::ostringstream os;
  auto b = [](bool v) { return v ? "true" : "false"; };
  os << "levels = " << cfg.level_min << ".." << cfg.level_max << '\n';
  os << "rho_minus = " << format_double(cfg.rho_minus) << '\n';
  os << "rho_plus = " << format_double(cfg.rho_plus) << '\n';
  os << "rho_plus_sweep = ";
  for (std::size_t i = 0; i < cfg.rho_plus_sweep.size(); ++i)
    os << (i ? "," : "") << format_double(cfg.rho_plus_sweep[i]);
  os << '\n';
  os << "sweep_level = " << cfg.sweep_level << '\n';
  os << "method = " << to_string(cfg.method.form) << '\n';
  os << "gamma = " << format_double(cfg.method.gamma) << '\n';
  os << "gamma_f = " << format_double(cfg.method.gamma_f) << '\n';
  os << "basis = " << to_string(cfg.basis) << '\n';
  os << "space = " << to_string(cfg.space) << '\n';
  os << "problem = " << (cfg.problem == ProblemKind::Radial ? "radial" : "linear") << '\n';
  os << "radius = " << format_double(cfg.radius) << '\n';
  os << "alpha = " << format_double(cfg.alpha) << '\n';
  os << "inclusion = " << (cfg.inclusion == Side::Minus ? "minus" : "plus") << '\n';
  os << "solver_tol = " << format_double(cfg.solver_tol) << '\n';
  os << "max_iter = " << cfg.max_iter << '\n';
  os << "preconditioner = " << (cfg.jacobi ? "jacobi" : "none") << '\n';
  os << "out = " << cfg.out_dir << '\n';
  os << "emit_csv = " << b(cfg.emit_csv) << '\n';
  os << "emit_markdown = " << b(cfg.emit_markdown) << '\n';
  os << "emit_mesh = " << b(cfg.emit_mesh) << '\n';
  os << "emit_matrix = " << b(cfg.emit_matrix) << '\n';
  os << "emit_field = " << b(cfg.emit_field) << '\n';
  os << "allow_large = " << b(cfg.allow_large) << '\n';
  return os.str();
}

}  // namespace hcife
