#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "hcife/discretization.hpp"

namespace hcife {

/// Bilinear form family. All share the volume and consistency terms and
/// differ in the edge penalties on edges of cut cells:
///   Main  value jumps weighted gamma rho/|e^s|, flux jumps rho |e^s|
///   E2    value jumps gamma rho/|e|, no flux term
///   E4    value jumps gamma rho/|e^s|, no flux term
///   E5    value jumps gamma rho/|e^s|, flux jumps gamma_F rho |e|
///   E3    value jumps gamma rho/|e|, full gradient jumps gamma_F rho |e|
enum class FormVariant : std::uint8_t { Main, E2, E3, E4, E5 };

std::string to_string(FormVariant v);
std::optional<FormVariant> parse_form_variant(std::string_view s);

struct MethodVariant {
  FormVariant form = FormVariant::Main;
  double gamma = 10.0;
  double gamma_f = 10.0;

  void validate() const;
};

/// Interface problem -div(rho grad u) = f with the exact solution used for
/// boundary data and error measurement.
struct ProblemSpec {
  Diffusion rho;
  std::shared_ptr<const InterfaceCurve> curve;
  std::function<double(const Vec2&, Side)> source;
  std::optional<std::array<double, 2>> constant_source;  // [minus, plus] when f is piecewise constant
  std::function<double(const Vec2&, Side)> exact;
  std::function<Vec2(const Vec2&, Side)> exact_gradient;
  double alpha = 2.0;

  double dirichlet(const Vec2& x, Side s) const { return exact(x, s); }

  /// Checks [u] = 0 and [rho D_n u] = 0 at `samples` points of a circular
  /// interface; throws ParameterError on violation.
  void check_interface_conditions(int samples = 64, double tol = 1e-10) const;
};

/// Radial solution u = R^alpha / rho inside the circle of radius r0 centred at
/// the origin, shifted outside so that value and flux are continuous.
ProblemSpec exact_solution_case1(double rho_minus, double rho_plus, double alpha = 2.0, double r0 = 1.0 / 3.0,
                                 Side inclusion = Side::Minus);

/// u(x) = offset + gradient . x with f = 0; needs rho^- == rho^+.
ProblemSpec linear_problem(const Diffusion& rho, std::shared_ptr<const InterfaceCurve> curve, const Vec2& gradient,
                           double offset = 0.0);

// ---------------------------------------------------------------------------
// Edge geometry shared by the forms and the mesh-dependent norms

struct SubEdge {
  Vec2 from = Vec2::Zero();
  Vec2 to = Vec2::Zero();
  Side side = Side::Minus;
  double length = 0.0;
};

struct EdgeGeometry {
  int edge = -1;
  std::array<int, 2> cells{-1, -1};  // T1, T2
  Vec2 normal = Vec2::Zero();        // unit, outward from T1
  double length = 0.0;
  std::vector<SubEdge> pieces;       // non-empty sub-edges e^- / e^+
};

/// `reverse` swaps the roles of T1 and T2.
EdgeGeometry edge_geometry(const Discretization& disc, int edge, bool reverse = false);

/// Coefficient vectors over the 6 local DOFs (T1's three vertices then T2's)
/// of the traces on one side at a point of the edge.
struct EdgeTraceRow {
  Eigen::Matrix<double, 6, 1> jump;          // v|T1 - v|T2 (times n1)
  Eigen::Matrix<double, 6, 1> flux_average;  // {rho grad v} . n1
  Eigen::Matrix<double, 6, 1> flux_jump;     // [grad v] . n1
  Eigen::Matrix<double, 2, 6> grad_jump;     // grad v|T1 - grad v|T2
  Eigen::Matrix<double, 6, 1> grad_average_n;  // {grad v} . n1
};

EdgeTraceRow edge_trace_row(const IFEBasis& b1, const IFEBasis& b2, const Vec2& normal, Side side, double rho,
                            const Vec2& x);

struct EdgeBlock {
  std::array<int, 6> dofs{};  // global coefficient of each local slot (T1 then T2)
  Eigen::Matrix<double, 6, 6> matrix = Eigen::Matrix<double, 6, 6>::Zero();
};

Eigen::Matrix3d volume_term(const Discretization& disc, int cell);

EdgeBlock edge_terms(const Discretization& disc, int edge, const MethodVariant& method, bool reverse = false);

Eigen::Vector3d load_vector(const Discretization& disc, int cell, const ProblemSpec& spec,
                            const RegionQuadrature& quad = {});

}  // namespace hcife
