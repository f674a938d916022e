#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "hcife/common.hpp"
#include "hcife/mesh.hpp"
#include "hcife/quadrature.hpp"

namespace hcife {

using ScalarField = std::function<double(const Vec2&)>;

/// Point of the interface with its unit normal (pointing out of Omega^+) and
/// the tangent obtained by a clockwise quarter turn of that normal.
struct ArcFrame {
  Vec2 x0 = Vec2::Zero();
  Vec2 n0 = Vec2::Zero();
  Vec2 t0 = Vec2::Zero();
};

struct RegionMoments {
  double area = 0.0;
  Vec2 first = Vec2::Zero();  // integral of x over the region

  Vec2 centroid() const { return area > 0.0 ? Vec2(first / area) : Vec2::Zero(); }
};

struct CapQuadrature {
  int radial_points = 4;
  double rel_tol = 1e-12;
  /// Accept a panel once the change is below this. Integrands such as
  /// (u - u_h)^2 carry rounding noise far above 1e-12 of their value.
  double abs_tol = 0.0;
  int max_depth = 30;
};

/// Closed, simple C^2 interface curve. Everything downstream of the cut
/// geometry talks to the curve through this interface only.
class InterfaceCurve {
 public:
  virtual ~InterfaceCurve() = default;

  /// Negative in Omega^-, positive in Omega^+.
  virtual double signed_distance(const Vec2& x) const = 0;

  /// Ascending parameters t in [0,1] with p + t(q-p) on the curve.
  /// Contacts within `eps` of tangency are not reported.
  virtual std::vector<double> segment_crossings(const Vec2& p, const Vec2& q, double eps) const = 0;

  /// The unique crossing of a segment whose endpoints lie on opposite
  /// closed sides.
  virtual double transversal_crossing(const Vec2& p, const Vec2& q) const = 0;

  /// Unit normal at a curve point, pointing out of Omega^+.
  virtual Vec2 normal_plus(const Vec2& x) const = 0;

  /// Arc-length midpoint of the arc p1 -> p2 passing nearest to `hint`.
  virtual ArcFrame arc_midpoint(const Vec2& p1, const Vec2& p2, const Vec2& hint) const = 0;
  virtual double arc_length(const Vec2& p1, const Vec2& p2, const Vec2& hint) const = 0;

  /// The region between the chord p1p2 and the arc through `hint`: which
  /// side it belongs to, its moments and integrals over it.
  virtual Side cap_side(const Vec2& p1, const Vec2& p2, const Vec2& hint) const = 0;
  virtual RegionMoments cap_moments(const Vec2& p1, const Vec2& p2, const Vec2& hint) const = 0;
  virtual double integrate_cap(const Vec2& p1, const Vec2& p2, const Vec2& hint, const ScalarField& f,
                               const CapQuadrature& opts) const = 0;

  /// True if the whole curve lies inside the triangle.
  virtual bool inside_triangle(const std::array<Vec2, 3>& tri) const = 0;

  virtual double max_curvature() const = 0;
  virtual double tubular_radius() const = 0;
  /// Distance from the curve to the boundary of (-a,a)^2 (negative if it leaves).
  virtual double clearance_to_square(double half_width) const = 0;
};

class Circle final : public InterfaceCurve {
 public:
  /// `inside` names the subdomain enclosed by the circle.
  Circle(Vec2 center, double radius, Side inside = Side::Minus);

  const Vec2& center() const { return center_; }
  double radius() const { return radius_; }
  Side inside() const { return inside_; }

  double signed_distance(const Vec2& x) const override;
  std::vector<double> segment_crossings(const Vec2& p, const Vec2& q, double eps) const override;
  double transversal_crossing(const Vec2& p, const Vec2& q) const override;
  Vec2 normal_plus(const Vec2& x) const override;
  ArcFrame arc_midpoint(const Vec2& p1, const Vec2& p2, const Vec2& hint) const override;
  double arc_length(const Vec2& p1, const Vec2& p2, const Vec2& hint) const override;
  Side cap_side(const Vec2&, const Vec2&, const Vec2&) const override { return inside_; }
  RegionMoments cap_moments(const Vec2& p1, const Vec2& p2, const Vec2& hint) const override;
  double integrate_cap(const Vec2& p1, const Vec2& p2, const Vec2& hint, const ScalarField& f,
                       const CapQuadrature& opts) const override;
  bool inside_triangle(const std::array<Vec2, 3>& tri) const override;
  double max_curvature() const override { return 1.0 / radius_; }
  double tubular_radius() const override { return radius_; }
  double clearance_to_square(double half_width) const override;

 private:
  struct Arc {
    double start;  // polar angle where the counterclockwise arc begins
    double sweep;  // central angle
    double mid;
  };
  Arc arc(const Vec2& p1, const Vec2& p2, const Vec2& hint) const;

  Vec2 center_;
  double radius_;
  Side inside_;
};

enum class CellClass : std::uint8_t { Minus, Plus, Cut };

inline Side side_of(CellClass c) { return c == CellClass::Plus ? Side::Plus : Side::Minus; }

/// Tie-break distance for point-on-curve and tangency decisions.
inline double geometric_tolerance(double h) { return 1e-12 * h; }

struct Crossing {
  Vec2 point = Vec2::Zero();
  int local_edge = -1;
  double t = 0.0;  // along local edge k, from local vertex k to (k+1)%3
};

/// Geometry of one cell relative to the interface. For uncut cells only the
/// classification, vertex sides, areas and sub-edge lengths are meaningful.
struct CutElement {
  int cell = -1;
  CellClass classification = CellClass::Minus;
  std::array<Vec2, 3> vertices;
  std::array<Side, 3> vertex_side{};
  std::array<Crossing, 2> crossings{};
  ArcFrame frame;
  double area_minus = 0.0;
  double area_plus = 0.0;
  Vec2 centroid_minus = Vec2::Zero();
  Vec2 centroid_plus = Vec2::Zero();
  double arc_length = 0.0;
  std::array<double, 3> sub_length_minus{};
  std::array<double, 3> sub_length_plus{};
  Side cap_side = Side::Minus;

  bool is_cut() const { return classification == CellClass::Cut; }
  double area() const { return area_minus + area_plus; }
  double area(Side s) const { return s == Side::Minus ? area_minus : area_plus; }
  const Vec2& centroid(Side s) const { return s == Side::Minus ? centroid_minus : centroid_plus; }
  double sub_length(Side s, int k) const { return s == Side::Minus ? sub_length_minus[k] : sub_length_plus[k]; }
  double edge_length(int k) const { return (vertices[(k + 1) % 3] - vertices[k]).norm(); }
  Vec2 interior_point() const { return (vertices[0] + vertices[1] + vertices[2]) / 3.0; }

  /// Straight-sided part of T cut off by the chord p1p2, counterclockwise.
  std::vector<Vec2> sub_polygon(Side s) const;
};

/// Per-vertex side with the on-curve tie-break (Omega^- closure).
Side classify_point(const InterfaceCurve& curve, const Vec2& x, double eps);

CellClass classify_cell(const TriMesh& mesh, const InterfaceCurve& curve, int cell);

std::vector<Vec2> segment_curve_intersections(const Vec2& p, const Vec2& q, const InterfaceCurve& curve);

ArcFrame arc_midpoint(const InterfaceCurve& curve, const Vec2& p1, const Vec2& p2, const Vec2& interior_hint);

CutElement cut_measures(const TriMesh& mesh, const InterfaceCurve& curve, int cell);
/// Same for a free counterclockwise triangle; the cell index is -1.
CutElement cut_measures(const std::array<Vec2, 3>& tri, const InterfaceCurve& curve);

struct RegionQuadrature {
  int degree = 4;  // exactness on straight-sided pieces
  CapQuadrature cap;
};

double integrate_cut_region(const CutElement& cut, const InterfaceCurve& curve, Side side, const ScalarField& f,
                            const RegionQuadrature& opts = {});
double integrate_cut_region(const CutElement& cut, const InterfaceCurve& curve, Side side, const Polynomial2& p,
                            const RegionQuadrature& opts = {});

/// Integral over a counterclockwise polygon by fan triangulation.
double integrate_polygon(const std::vector<Vec2>& poly, const ScalarField& f, int degree);
RegionMoments polygon_moments(const std::vector<Vec2>& poly);

}  // namespace hcife
