#include "hcife/forms.hpp"

#include <cmath>
#include <numbers>

namespace hcife {

std::string to_string(FormVariant v) {
  switch (v) {
    case FormVariant::Main: return "main";
    case FormVariant::E2: return "e2";
    case FormVariant::E3: return "e3";
    case FormVariant::E4: return "e4";
    case FormVariant::E5: return "e5";
  }
  return "?";
}

std::optional<FormVariant> parse_form_variant(std::string_view s) {
  if (s == "main") return FormVariant::Main;
  if (s == "e2") return FormVariant::E2;
  if (s == "e3") return FormVariant::E3;
  if (s == "e4") return FormVariant::E4;
  if (s == "e5") return FormVariant::E5;
  return std::nullopt;
}

void MethodVariant::validate() const {
  if (!(gamma > 0.0)) throw ParameterError("penalty gamma must be positive");
  if ((form == FormVariant::E5 || form == FormVariant::E3) && !(gamma_f > 0.0))
    throw ParameterError("flux penalty gamma_F must be positive");
}

// ---------------------------------------------------------------------------

void ProblemSpec::check_interface_conditions(int samples, double tol) const {
  const auto* circle = dynamic_cast<const Circle*>(curve.get());
  if (!circle) return;
  for (int k = 0; k < samples; ++k) {
    const double phi = 2.0 * std::numbers::pi * (k + 0.5) / samples;
    const Vec2 x = circle->center() + circle->radius() * Vec2(std::cos(phi), std::sin(phi));
    const Vec2 n = curve->normal_plus(x);
    const double jump = exact(x, Side::Plus) - exact(x, Side::Minus);
    const double flux = rho.plus * exact_gradient(x, Side::Plus).dot(n) - rho.minus * exact_gradient(x, Side::Minus).dot(n);
    const double scale = 1.0 + std::abs(exact(x, Side::Plus));
    const double fscale = 1.0 + std::abs(rho.plus * exact_gradient(x, Side::Plus).dot(n));
    if (std::abs(jump) > tol * scale) throw ParameterError("exact solution is discontinuous across the interface");
    if (std::abs(flux) > tol * fscale) throw ParameterError("exact flux rho D_n u jumps across the interface");
  }
}

ProblemSpec exact_solution_case1(double rho_minus, double rho_plus, double alpha, double r0, Side inclusion) {
  if (!(rho_minus > 0.0) || !(rho_plus > 0.0)) throw ParameterError("diffusion coefficients must be positive");
  ProblemSpec spec;
  spec.rho = {rho_minus, rho_plus};
  spec.alpha = alpha;
  spec.curve = std::make_shared<Circle>(Vec2::Zero(), r0, inclusion);

  const double rho_in = spec.rho(inclusion);
  const double rho_out = spec.rho(other(inclusion));
  const double shift = std::pow(r0, alpha) * (1.0 / rho_in - 1.0 / rho_out);
  const Diffusion rho = spec.rho;

  spec.exact = [=](const Vec2& x, Side s) {
    const double ra = std::pow(x.norm(), alpha);
    return s == inclusion ? ra / rho_in : ra / rho_out + shift;
  };
  spec.exact_gradient = [=](const Vec2& x, Side s) -> Vec2 {
    const double r = x.norm();
    if (r == 0.0) return Vec2::Zero();
    return alpha * std::pow(r, alpha - 2.0) / rho(s) * x;
  };
  // -rho Laplace(R^alpha / rho) = -alpha^2 R^(alpha-2)
  spec.source = [=](const Vec2& x, Side) { return -alpha * alpha * std::pow(x.norm(), alpha - 2.0); };
  if (alpha == 2.0) spec.constant_source = std::array<double, 2>{-4.0, -4.0};
  return spec;
}

ProblemSpec linear_problem(const Diffusion& rho, std::shared_ptr<const InterfaceCurve> curve, const Vec2& gradient,
                           double offset) {
  if (rho.minus != rho.plus) throw ParameterError("a linear exact solution needs rho^- == rho^+");
  ProblemSpec spec;
  spec.rho = rho;
  spec.curve = std::move(curve);
  spec.alpha = 1.0;
  spec.exact = [=](const Vec2& x, Side) { return offset + gradient.dot(x); };
  spec.exact_gradient = [=](const Vec2&, Side) { return gradient; };
  spec.source = [](const Vec2&, Side) { return 0.0; };
  spec.constant_source = std::array<double, 2>{0.0, 0.0};
  return spec;
}

// ---------------------------------------------------------------------------

EdgeGeometry edge_geometry(const Discretization& disc, int edge, bool reverse) {
  const TriMesh& mesh = disc.mesh();
  const MeshEdge& me = mesh.edge(edge);
  EdgeGeometry g;
  g.edge = edge;
  g.cells = me.cells;
  if (reverse && !me.on_boundary()) std::swap(g.cells[0], g.cells[1]);

  const Vec2& a = mesh.vertex(me.vertices[0]);
  const Vec2& b = mesh.vertex(me.vertices[1]);
  g.length = (b - a).norm();
  Vec2 n(b.y() - a.y(), a.x() - b.x());
  n /= n.norm();
  const auto pts = mesh.cell_points(g.cells[0]);
  const Vec2 c1 = (pts[0] + pts[1] + pts[2]) / 3.0;
  if (n.dot(a - c1) < 0.0) n = -n;
  g.normal = n;

  // sub-edges come from a cut neighbour when there is one
  int owner = g.cells[0];
  if (!disc.is_cut(owner) && g.cells[1] >= 0 && disc.is_cut(g.cells[1])) owner = g.cells[1];
  const CutElement ce = disc.cell_geometry(owner);
  const int k = mesh.local_edge(owner, edge);
  const Vec2& from = ce.vertices[k];
  const Vec2& to = ce.vertices[(k + 1) % 3];

  const Crossing* cross_pt = nullptr;
  if (ce.is_cut())
    for (const auto& c : ce.crossings)
      if (c.local_edge == k) cross_pt = &c;

  if (cross_pt) {
    const Side s0 = ce.vertex_side[k];
    const Side s1 = ce.vertex_side[(k + 1) % 3];
    const SubEdge first{from, cross_pt->point, s0, ce.sub_length(s0, k)};
    const SubEdge second{cross_pt->point, to, s1, ce.sub_length(s1, k)};
    if (first.length > 0.0) g.pieces.push_back(first);
    if (second.length > 0.0) g.pieces.push_back(second);
  } else {
    const Side s = ce.vertex_side[k];
    g.pieces.push_back({from, to, s, g.length});
  }
  return g;
}

EdgeTraceRow edge_trace_row(const IFEBasis& b1, const IFEBasis& b2, const Vec2& normal, Side side, double rho,
                            const Vec2& x) {
  EdgeTraceRow r;
  const auto v1 = b1.values(side, x);
  const auto v2 = b2.values(side, x);
  for (int i = 0; i < 3; ++i) {
    const Vec2& g1 = b1.gradient(side, i);
    const Vec2& g2 = b2.gradient(side, i);
    r.jump(i) = v1[i];
    r.jump(3 + i) = -v2[i];
    r.flux_average(i) = 0.5 * rho * g1.dot(normal);
    r.flux_average(3 + i) = 0.5 * rho * g2.dot(normal);
    r.grad_average_n(i) = 0.5 * g1.dot(normal);
    r.grad_average_n(3 + i) = 0.5 * g2.dot(normal);
    r.flux_jump(i) = g1.dot(normal);
    r.flux_jump(3 + i) = -g2.dot(normal);
    r.grad_jump.col(i) = g1;
    r.grad_jump.col(3 + i) = -g2;
  }
  return r;
}

Eigen::Matrix3d volume_term(const Discretization& disc, int cell) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  const IFEBasis b = disc.basis(cell);
  const CutElement ce = disc.cell_geometry(cell);
  for (Side s : both_sides) {
    const double area = ce.area(s);
    if (area <= 0.0) continue;
    const double w = disc.rho()(s) * area;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) += w * b.gradient(s, i).dot(b.gradient(s, j));
  }
  return m;
}

EdgeBlock edge_terms(const Discretization& disc, int edge, const MethodVariant& method, bool reverse) {
  const EdgeGeometry g = edge_geometry(disc, edge, reverse);
  if (g.cells[1] < 0) throw ParameterError("edge terms are defined on interior edges only");

  EdgeBlock blk;
  for (int i = 0; i < 3; ++i) {
    blk.dofs[i] = disc.dof(g.cells[0], i);
    blk.dofs[3 + i] = disc.dof(g.cells[1], i);
  }
  const IFEBasis b1 = disc.basis(g.cells[0]);
  const IFEBasis b2 = disc.basis(g.cells[1]);
  const auto rule = gauss_legendre(2);  // integrands are at most quadratic along the edge

  for (const SubEdge& piece : g.pieces) {
    const double rho = disc.rho()(piece.side);
    const double value_weight = [&] {
      switch (method.form) {
        case FormVariant::E2:
        case FormVariant::E3: return method.gamma * rho / g.length;
        default: return method.gamma * rho / piece.length;
      }
    }();
    const double flux_weight = [&] {
      switch (method.form) {
        case FormVariant::Main: return rho * piece.length;
        case FormVariant::E5: return method.gamma_f * rho * g.length;
        default: return 0.0;
      }
    }();
    const double grad_weight = method.form == FormVariant::E3 ? method.gamma_f * rho * g.length : 0.0;

    for (const auto& q : rule) {
      const Vec2 x = piece.from + q.x * (piece.to - piece.from);
      const double w = q.w * piece.length;
      const EdgeTraceRow r = edge_trace_row(b1, b2, g.normal, piece.side, rho, x);
      blk.matrix -= w * (r.flux_average * r.jump.transpose() + r.jump * r.flux_average.transpose());
      blk.matrix += w * value_weight * r.jump * r.jump.transpose();
      if (flux_weight != 0.0) blk.matrix += w * flux_weight * r.flux_jump * r.flux_jump.transpose();
      if (grad_weight != 0.0) blk.matrix += w * grad_weight * r.grad_jump.transpose() * r.grad_jump;
    }
  }
  return blk;
}

Eigen::Vector3d load_vector(const Discretization& disc, int cell, const ProblemSpec& spec,
                            const RegionQuadrature& quad) {
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  const IFEBasis b = disc.basis(cell);
  const CutElement ce = disc.cell_geometry(cell);
  for (Side s : both_sides) {
    const double area = ce.area(s);
    if (area <= 0.0) continue;
    if (spec.constant_source) {
      const double f = (*spec.constant_source)[index(s)];
      if (f == 0.0) continue;
      const auto w = b.values(s, ce.centroid(s));
      for (int i = 0; i < 3; ++i) out(i) += f * area * w[i];
    } else {
      for (int i = 0; i < 3; ++i) {
        out(i) += integrate_cut_region(
            ce, disc.curve(), s, [&](const Vec2& x) { return spec.source(x, s) * b.value(s, i, x); }, quad);
      }
    }
  }
  return out;
}

}  // namespace hcife
