#include "hcife/norms.hpp"

#include <algorithm>
#include <cmath>

namespace hcife {

namespace {

/// Absolute floor for cap refinement of error integrands, relative to the cell
/// area; many orders below any reported error.
constexpr double kErrorCapFloor = 1e-18;

RegionQuadrature error_quadrature(RegionQuadrature quad, double cell_area) {
  quad.cap.abs_tol = std::max(quad.cap.abs_tol, kErrorCapFloor * cell_area);
  return quad;
}

double value_with(const IFEBasis& b, const std::array<double, 3>& ul, Side s, const Vec2& x) {
  const auto w = b.values(s, x);
  return ul[0] * w[0] + ul[1] * w[1] + ul[2] * w[2];
}

Vec2 gradient_with(const IFEBasis& b, const std::array<double, 3>& ul, Side s) {
  return ul[0] * b.gradient(s, 0) + ul[1] * b.gradient(s, 1) + ul[2] * b.gradient(s, 2);
}

/// Sum of the jump terms of the V (and optionally W) norm.
double edge_part(const Discretization& disc, std::span<const double> v, bool with_average) {
  double sum = 0.0;
  const auto rule = gauss_legendre(2);
  for (int e : disc.interface_edges()) {
    const EdgeGeometry g = edge_geometry(disc, e);
    const IFEBasis b1 = disc.basis(g.cells[0]);
    const IFEBasis b2 = disc.basis(g.cells[1]);
    Eigen::Matrix<double, 6, 1> coeffs;
    for (int i = 0; i < 3; ++i) {
      coeffs(i) = v[disc.dof(g.cells[0], i)];
      coeffs(3 + i) = v[disc.dof(g.cells[1], i)];
    }
    for (const SubEdge& piece : g.pieces) {
      const double rho = disc.rho()(piece.side);
      for (const auto& q : rule) {
        const Vec2 x = piece.from + q.x * (piece.to - piece.from);
        const double w = q.w * piece.length;
        const EdgeTraceRow r = edge_trace_row(b1, b2, g.normal, piece.side, rho, x);
        const double jump = r.jump.dot(coeffs);
        const double fjump = r.flux_jump.dot(coeffs);
        sum += w * (rho / piece.length * jump * jump + rho * piece.length * fjump * fjump);
        if (with_average) {
          const double avg = r.grad_average_n.dot(coeffs);
          sum += w * rho * piece.length * avg * avg;
        }
      }
    }
  }
  return sum;
}

double broken_energy(const Discretization& disc, std::span<const double> v) {
  double sum = 0.0;
  for (int c = 0; c < disc.mesh().num_cells(); ++c) {
    const IFEBasis b = disc.basis(c);
    const auto ul = disc.local_values(v, c);
    if (!disc.is_cut(c)) {
      const Side s = side_of(disc.classification(c));
      sum += disc.rho()(s) * disc.mesh().cell_area(c) * gradient_with(b, ul, s).squaredNorm();
      continue;
    }
    const CutElement& ce = disc.cut(c);
    for (Side s : both_sides) sum += disc.rho()(s) * ce.area(s) * gradient_with(b, ul, s).squaredNorm();
  }
  return sum;
}

}  // namespace

double discrete_value(const Discretization& disc, std::span<const double> u, int cell, Side s, const Vec2& x) {
  return value_with(disc.basis(cell), disc.local_values(u, cell), s, x);
}

Vec2 discrete_gradient(const Discretization& disc, std::span<const double> u, int cell, Side s) {
  return gradient_with(disc.basis(cell), disc.local_values(u, cell), s);
}

double l2_error(const Discretization& disc, std::span<const double> u, const ProblemSpec& spec,
                const RegionQuadrature& quad) {
  double sum = 0.0;
  for (int c = 0; c < disc.mesh().num_cells(); ++c) {
    const IFEBasis b = disc.basis(c);
    const auto ul = disc.local_values(u, c);
    const CutElement ce = disc.cell_geometry(c);
    for (Side s : both_sides) {
      if (ce.area(s) <= 0.0) continue;
      sum += integrate_cut_region(
          ce, disc.curve(), s,
          [&](const Vec2& x) {
            const double d = spec.exact(x, s) - value_with(b, ul, s, x);
            return d * d;
          },
          error_quadrature(quad, ce.area()));
    }
  }
  return std::sqrt(sum);
}

EnergyErrors energy_errors(const Discretization& disc, std::span<const double> u, const ProblemSpec& spec,
                           const RegionQuadrature& quad) {
  double s1 = 0.0;
  double sbar = 0.0;
  for (int c = 0; c < disc.mesh().num_cells(); ++c) {
    const IFEBasis b = disc.basis(c);
    const auto ul = disc.local_values(u, c);
    const CutElement ce = disc.cell_geometry(c);
    for (Side s : both_sides) {
      if (ce.area(s) <= 0.0) continue;
      const Vec2 gh = gradient_with(b, ul, s);
      const double integral = integrate_cut_region(
          ce, disc.curve(), s, [&](const Vec2& x) { return (spec.exact_gradient(x, s) - gh).squaredNorm(); },
          error_quadrature(quad, ce.area()));
      const double rho = disc.rho()(s);
      s1 += rho * integral;
      sbar += rho * rho * integral;
    }
  }
  return {std::sqrt(s1), std::sqrt(sbar)};
}

MaxErrors maxnorm_errors(const Discretization& disc, std::span<const double> u, const ProblemSpec& spec) {
  MaxErrors m;
  const TriMesh& mesh = disc.mesh();
  auto visit = [&](const IFEBasis& b, const std::array<double, 3>& ul, Side s, const Vec2& x, bool uncut) {
    const double rho = disc.rho()(s);
    m.einf = std::max(m.einf, std::abs(spec.exact(x, s) - value_with(b, ul, s, x)));
    const double g = (spec.exact_gradient(x, s) - gradient_with(b, ul, s)).norm();
    m.e1inf = std::max(m.e1inf, std::sqrt(rho) * g);
    m.ebar1inf = std::max(m.ebar1inf, rho * g);
    if (uncut) m.etilde1inf = std::max(m.etilde1inf, rho * g);
  };

  for (int c = 0; c < mesh.num_cells(); ++c) {
    const IFEBasis b = disc.basis(c);
    const auto ul = disc.local_values(u, c);
    const auto pts = mesh.cell_points(c);
    if (!disc.is_cut(c)) {
      const Side s = side_of(disc.classification(c));
      for (const Vec2& p : pts) visit(b, ul, s, p, true);
      visit(b, ul, s, (pts[0] + pts[1] + pts[2]) / 3.0, true);
      continue;
    }
    const CutElement& ce = disc.cut(c);
    for (int k = 0; k < 3; ++k) visit(b, ul, ce.vertex_side[k], pts[k], false);
    for (const Crossing& cr : ce.crossings)
      for (Side s : both_sides) visit(b, ul, s, cr.point, false);

    const std::array<Vec2, 3> gamma_pts{ce.crossings[0].point, ce.crossings[1].point, ce.frame.x0};
    for (const Vec2& x : gamma_pts) {
      const Vec2 n = disc.curve().normal_plus(x);
      for (Side s : both_sides) {
        const double rho = disc.rho()(s);
        const double d = rho * (spec.exact_gradient(x, s) - gradient_with(b, ul, s)).dot(n);
        m.enrm = std::max(m.enrm, std::abs(d));
      }
    }
  }
  return m;
}

ErrorReport compute_errors(const Discretization& disc, std::span<const double> u, const ProblemSpec& spec) {
  ErrorReport r;
  r.level = disc.mesh().level();
  r.h = disc.mesh().h();
  r.e0 = l2_error(disc, u, spec);
  const EnergyErrors en = energy_errors(disc, u, spec);
  r.e1 = en.e1;
  r.ebar1 = en.ebar1;
  const MaxErrors mx = maxnorm_errors(disc, u, spec);
  r.einf = mx.einf;
  r.e1inf = mx.e1inf;
  r.ebar1inf = mx.ebar1inf;
  r.etilde1inf = mx.etilde1inf;
  r.enrm = mx.enrm;
  return r;
}

double v_norm(const Discretization& disc, std::span<const double> v) {
  return std::sqrt(broken_energy(disc, v) + edge_part(disc, v, false));
}

double w_norm(const Discretization& disc, std::span<const double> v) {
  return std::sqrt(broken_energy(disc, v) + edge_part(disc, v, true));
}

std::vector<std::optional<double>> eoc(std::span<const double> errors, std::span<const double> hs) {
  if (errors.size() != hs.size()) throw ParameterError("eoc needs one h per error");
  std::vector<std::optional<double>> out;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    const double e0 = errors[k];
    const double e1 = errors[k + 1];
    if (!(e0 >= kEocNoiseFloor) || !(e1 >= kEocNoiseFloor) || !(hs[k] > 0.0) || !(hs[k + 1] > 0.0) || hs[k] == hs[k + 1]) {
      out.emplace_back();
      continue;
    }
    out.emplace_back(std::log(e1 / e0) / std::log(hs[k + 1] / hs[k]));
  }
  return out;
}

}  // namespace hcife
