#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hcife/forms.hpp"
#include "hcife/solver.hpp"

namespace hcife {

/// Value and gradient of a coefficient vector restricted to one side of one cell.
double discrete_value(const Discretization& disc, std::span<const double> u, int cell, Side s, const Vec2& x);
Vec2 discrete_gradient(const Discretization& disc, std::span<const double> u, int cell, Side s);

struct ErrorReport {
  int level = 0;
  double h = 0.0;
  int dofs = 0;
  double e0 = 0.0;         // L2
  double einf = 0.0;       // max |u - u_h| over the evaluation set
  double e1 = 0.0;         // sqrt(rho)-weighted H1 seminorm
  double e1inf = 0.0;
  double ebar1 = 0.0;      // rho-weighted
  double ebar1inf = 0.0;
  double etilde1inf = 0.0; // rho-weighted, uncut cells only
  double enrm = 0.0;       // rho D_n on the interface
  SolveReport solve;
};

double l2_error(const Discretization& disc, std::span<const double> u, const ProblemSpec& spec,
                const RegionQuadrature& quad = {});

struct EnergyErrors {
  double e1 = 0.0;
  double ebar1 = 0.0;
};
EnergyErrors energy_errors(const Discretization& disc, std::span<const double> u, const ProblemSpec& spec,
                           const RegionQuadrature& quad = {});

struct MaxErrors {
  double einf = 0.0;
  double e1inf = 0.0;
  double ebar1inf = 0.0;
  double etilde1inf = 0.0;
  double enrm = 0.0;
};

/// Point-set maxima: vertices and centroid of uncut cells; vertices on their
/// own side plus both branches at the two edge crossings of cut cells. The
/// interface flux error uses the crossings and x0 of every cut cell.
MaxErrors maxnorm_errors(const Discretization& disc, std::span<const double> u, const ProblemSpec& spec);

ErrorReport compute_errors(const Discretization& disc, std::span<const double> u, const ProblemSpec& spec);

/// Mesh-dependent energy norm: weighted broken gradient plus value and flux
/// jumps on the sub-edges of edges of cut cells.
double v_norm(const Discretization& disc, std::span<const double> v);
/// v_norm plus the flux averages.
double w_norm(const Discretization& disc, std::span<const double> v);

/// Errors below this are roundoff; no rate is reported for them.
inline constexpr double kEocNoiseFloor = 1e-10;

/// log(e_{k+1}/e_k) / log(h_{k+1}/h_k); empty when either error is under
/// kEocNoiseFloor (or not a number).
std::vector<std::optional<double>> eoc(std::span<const double> errors, std::span<const double> hs);

}  // namespace hcife
