#pragma once

// Glue between hcife types and the oracles.

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "hcife/study.hpp"
#include "oracles.hpp"

namespace testing {

inline oracle::Pt pt(const hcife::Vec2& v) { return {v.x(), v.y()}; }
inline hcife::Vec2 vec(const oracle::Pt& p) { return {p[0], p[1]}; }

inline const oracle::Tri kReferenceTriangle{{{0.3, 0.0}, {0.4, 0.0}, {0.3, 0.1}}};

inline std::array<hcife::Vec2, 3> reference_triangle() {
  return {hcife::Vec2(0.3, 0.0), hcife::Vec2(0.4, 0.0), hcife::Vec2(0.3, 0.1)};
}

inline std::shared_ptr<hcife::Circle> study_circle() {
  return std::make_shared<hcife::Circle>(hcife::Vec2::Zero(), 1.0 / 3.0, hcife::Side::Minus);
}

inline hcife::Discretization make_disc(int level, double rho_minus, double rho_plus,
                                       hcife::GlobalSpace space = hcife::GlobalSpace::Broken,
                                       hcife::BasisVariant variant = hcife::BasisVariant::MidpointTangent) {
  return hcife::Discretization(hcife::TriMesh::uniform(level), study_circle(), {rho_minus, rho_plus}, variant, space);
}

inline oracle::MeshView mesh_view(const hcife::Discretization& disc) {
  oracle::MeshView v;
  for (const auto& p : disc.mesh().vertices()) v.vertices.push_back(pt(p));
  for (int c = 0; c < disc.mesh().num_cells(); ++c) {
    v.cells.push_back(disc.mesh().cell(c));
    v.cell_dofs.push_back(disc.cell_dofs(c));
  }
  v.num_dofs = disc.num_dofs();
  return v;
}

inline oracle::Form oracle_form(hcife::FormVariant f) {
  switch (f) {
    case hcife::FormVariant::Main: return oracle::Form::Main;
    case hcife::FormVariant::E2: return oracle::Form::E2;
    case hcife::FormVariant::E3: return oracle::Form::E3;
    case hcife::FormVariant::E4: return oracle::Form::E4;
    case hcife::FormVariant::E5: return oracle::Form::E5;
  }
  return oracle::Form::Main;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Random coefficient vector, zero on boundary coefficients.
template <class Gen>
std::vector<double> random_interior(const hcife::Discretization& disc, Gen& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(disc.num_dofs());
  for (int d = 0; d < disc.num_dofs(); ++d)
    v[d] = disc.mesh().vertex_on_boundary(disc.dof_vertex(d)) ? 0.0 : u(gen);
  return v;
}

inline double quadratic_form(const hcife::CsrMatrix& a, const std::vector<double>& v) {
  const auto av = a.multiply(v);
  return hcife::pairwise_dot(v, av);
}

/// Defining-condition residuals of a local basis, scaled to be dimensionless:
/// gradients are multiplied by the cell diameter, fluxes also divided by the
/// larger coefficient.
struct BasisResiduals {
  double nodal = 0.0;
  double value_jump = 0.0;
  double tangential = 0.0;
  double flux = 0.0;
  double unity = 0.0;

  double max() const { return std::max({nodal, value_jump, tangential, flux, unity}); }
};

inline BasisResiduals basis_residuals(const hcife::IFEBasis& b, const hcife::CutElement& ce,
                                      const hcife::Diffusion& rho) {
  using hcife::Side;
  BasisResiduals r;
  const double diam = std::max({(ce.vertices[1] - ce.vertices[0]).norm(), (ce.vertices[2] - ce.vertices[1]).norm(),
                                (ce.vertices[0] - ce.vertices[2]).norm()});
  const double rmax = std::max(rho.minus, rho.plus);
  const auto& f = ce.frame;
  for (int j = 0; j < 3; ++j) {
    const auto v = b.values(ce.vertex_side[j], ce.vertices[j]);
    for (int i = 0; i < 3; ++i) r.nodal = std::max(r.nodal, std::abs(v[i] - (i == j ? 1.0 : 0.0)));
  }
  const auto vp = b.values(Side::Plus, f.x0);
  const auto vm = b.values(Side::Minus, f.x0);
  for (int i = 0; i < 3; ++i) {
    r.value_jump = std::max(r.value_jump, std::abs(vp[i] - vm[i]));
    const hcife::Vec2 gp = b.gradient(Side::Plus, i), gm = b.gradient(Side::Minus, i);
    r.tangential = std::max(r.tangential, diam * std::abs((gp - gm).dot(f.t0)));
    r.flux = std::max(r.flux, diam / rmax * std::abs(rho.plus * gp.dot(f.n0) - rho.minus * gm.dot(f.n0)));
  }
  std::vector<hcife::Vec2> probes{ce.vertices[0], ce.vertices[1], ce.vertices[2], f.x0, ce.interior_point()};
  for (const auto& c : ce.crossings) probes.push_back(c.point);
  for (const auto& x : probes)
    for (Side s : hcife::both_sides) {
      const auto v = b.values(s, x);
      r.unity = std::max(r.unity, std::abs(v[0] + v[1] + v[2] - 1.0));
    }
  return r;
}

}  // namespace testing
