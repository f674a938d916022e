#include "hcife/interface_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hcife {

// ---------------------------------------------------------------------------
// Circle

Circle::Circle(Vec2 center, double radius, Side inside) : center_(std::move(center)), radius_(radius), inside_(inside) {
  if (!(radius > 0.0)) throw ParameterError("circle radius must be positive");
}

double Circle::signed_distance(const Vec2& x) const {
  const double d = (x - center_).norm() - radius_;
  return inside_ == Side::Minus ? d : -d;
}

std::vector<double> Circle::segment_crossings(const Vec2& p, const Vec2& q, double eps) const {
  const Vec2 d = q - p;
  const Vec2 f = p - center_;
  const double a = d.squaredNorm();
  if (a == 0.0) return {};
  const double len = std::sqrt(a);
  const double line_dist = std::abs(cross(d, f)) / len;
  if (line_dist > radius_ - eps) return {};  // miss or tangential contact

  const double b = f.dot(d);
  const double c = f.squaredNorm() - radius_ * radius_;
  const double disc = std::max(b * b - a * c, 0.0);
  const double s = std::sqrt(disc);
  const double qq = -(b + std::copysign(s, b));
  double t1 = qq / a;
  double t2 = qq != 0.0 ? c / qq : t1;
  if (t1 > t2) std::swap(t1, t2);

  std::vector<double> out;
  const double slack = eps / len;
  for (double t : {t1, t2}) {
    if (t < -slack || t > 1.0 + slack) continue;
    t = std::clamp(t, 0.0, 1.0);
    if (!out.empty() && std::abs(t - out.back()) * len <= eps) continue;
    out.push_back(t);
  }
  return out;
}

double Circle::transversal_crossing(const Vec2& p, const Vec2& q) const {
  const Vec2 d = q - p;
  const Vec2 f = p - center_;
  const double a = d.squaredNorm();
  const double b = f.dot(d);
  const double c = f.squaredNorm() - radius_ * radius_;
  const double s = std::sqrt(std::max(b * b - a * c, 0.0));
  const double qq = -(b + std::copysign(s, b));
  const double t1 = qq / a;
  const double t2 = qq != 0.0 ? c / qq : t1;
  auto gap = [](double t) { return t < 0.0 ? -t : (t > 1.0 ? t - 1.0 : 0.0); };
  const double t = gap(t1) <= gap(t2) ? t1 : t2;
  return std::clamp(t, 0.0, 1.0);
}

Vec2 Circle::normal_plus(const Vec2& x) const {
  const Vec2 radial = (x - center_).normalized();
  // Omega^+ outside the disk: its outward normal points to the center
  return inside_ == Side::Minus ? Vec2(-radial) : radial;
}

Circle::Arc Circle::arc(const Vec2& p1, const Vec2& p2, const Vec2& hint) const {
  const Vec2 u1 = p1 - center_;
  const Vec2 u2 = p2 - center_;
  const double minor = std::atan2(std::abs(cross(u1, u2)), u1.dot(u2));
  if (minor == 0.0) throw DomainError("degenerate arc: coincident end points");

  Vec2 dir = u1.normalized() + u2.normalized();
  if (dir.norm() < 1e-14) dir = rotate_cw(u2 - u1);  // antipodal end points
  dir.normalize();
  const Vec2 cand_near = center_ + radius_ * dir;
  const Vec2 cand_far = center_ - radius_ * dir;
  const bool take_minor = (cand_near - hint).squaredNorm() <= (cand_far - hint).squaredNorm();
  const Vec2 mid_dir = take_minor ? dir : Vec2(-dir);
  const double sweep = take_minor ? minor : 2.0 * std::numbers::pi - minor;
  const double mid = std::atan2(mid_dir.y(), mid_dir.x());
  return {mid - 0.5 * sweep, sweep, mid};
}

ArcFrame Circle::arc_midpoint(const Vec2& p1, const Vec2& p2, const Vec2& hint) const {
  const Arc a = arc(p1, p2, hint);
  ArcFrame fr;
  fr.x0 = center_ + radius_ * Vec2(std::cos(a.mid), std::sin(a.mid));
  fr.n0 = normal_plus(fr.x0);
  fr.t0 = rotate_cw(fr.n0);
  return fr;
}

double Circle::arc_length(const Vec2& p1, const Vec2& p2, const Vec2& hint) const {
  return radius_ * arc(p1, p2, hint).sweep;
}

RegionMoments Circle::cap_moments(const Vec2& p1, const Vec2& p2, const Vec2& hint) const {
  // Green's theorem over the closed path: arc (counterclockwise about the
  // center) followed by the chord back to the start. Coordinates relative to
  // the center, so the arc terms reduce to pure trigonometric integrals.
  const Arc a = arc(p1, p2, hint);
  const double r = radius_;
  const double pa = a.start;
  const double pb = a.start + a.sweep;
  const double ca = std::cos(pa), sa = std::sin(pa);
  const double cb = std::cos(pb), sb = std::sin(pb);

  // arc: 1/2 oint (x dy - y dx), 1/2 oint x^2 dy, 1/2 oint y^2 (-dx)
  double area = 0.5 * r * r * a.sweep;
  double mx = 0.5 * r * r * r * ((sb - sb * sb * sb / 3.0) - (sa - sa * sa * sa / 3.0));
  double my = 0.5 * r * r * r * ((-cb + cb * cb * cb / 3.0) - (-ca + ca * ca * ca / 3.0));

  // chord from the arc end back to its start
  const Vec2 s(r * cb, r * sb);
  const Vec2 e(r * ca, r * sa);
  area += 0.5 * (s.x() * e.y() - e.x() * s.y());
  mx += (e.y() - s.y()) * (s.x() * s.x() + s.x() * e.x() + e.x() * e.x()) / 6.0;
  my -= (e.x() - s.x()) * (s.y() * s.y() + s.y() * e.y() + e.y() * e.y()) / 6.0;

  RegionMoments m;
  m.area = area;
  m.first = Vec2(mx, my) + area * center_;
  return m;
}

double Circle::integrate_cap(const Vec2& p1, const Vec2& p2, const Vec2& hint, const ScalarField& f,
                             const CapQuadrature& opts) const {
  const Arc a = arc(p1, p2, hint);
  if (a.sweep >= std::numbers::pi) throw DomainError("cap quadrature needs a minor arc");
  const double half = 0.5 * a.sweep;
  const auto radial = gauss_legendre(opts.radial_points);
  const auto angular = gauss_legendre(8);

  // polar coordinates about the center: rho runs from the chord to the arc
  auto panel = [&](double lo, double hi, double& value, double& magnitude) {
    value = 0.0;
    magnitude = 0.0;
    for (const auto& qa : angular) {
      const double phi = lo + qa.x * (hi - lo);
      const Vec2 dir(std::cos(phi), std::sin(phi));
      const double psi = phi - a.mid;
      // r - d/cos(psi) without cancellation near the arc ends
      const double width =
          2.0 * radius_ * std::sin(0.5 * (half + psi)) * std::sin(0.5 * (half - psi)) / std::cos(psi);
      double inner = 0.0, inner_abs = 0.0;
      for (const auto& qr : radial) {
        const double rho = radius_ - (1.0 - qr.x) * width;
        const double v = f(center_ + rho * dir) * rho * qr.w;
        inner += v;
        inner_abs += std::abs(v);
      }
      value += qa.w * inner * width;
      magnitude += qa.w * inner_abs * width;
    }
    value *= hi - lo;
    magnitude *= hi - lo;
  };

  auto recurse = [&](auto&& self, double lo, double hi, double whole, int depth) -> double {
    const double mid = 0.5 * (lo + hi);
    double left, left_abs, right, right_abs;
    panel(lo, mid, left, left_abs);
    panel(mid, hi, right, right_abs);
    const double refined = left + right;
    const double change = std::abs(refined - whole);
    if (change <= opts.rel_tol * std::max(std::abs(refined), left_abs + right_abs) || change <= opts.abs_tol)
      return refined;
    if (depth >= opts.max_depth) throw QuadratureError("cap quadrature did not converge within depth limit");
    return self(self, lo, mid, left, depth + 1) + self(self, mid, hi, right, depth + 1);
  };

  double whole, whole_abs;
  const double lo = a.start, hi = a.start + a.sweep;
  panel(lo, hi, whole, whole_abs);
  return recurse(recurse, lo, hi, whole, 0);
}

bool Circle::inside_triangle(const std::array<Vec2, 3>& tri) const {
  for (int k = 0; k < 3; ++k) {
    const Vec2& a = tri[k];
    const Vec2& b = tri[(k + 1) % 3];
    const Vec2 e = b - a;
    // center strictly on the inner side of every edge line, farther than r
    if (cross(e, center_ - a) / e.norm() <= radius_) return false;
  }
  return true;
}

double Circle::clearance_to_square(double half_width) const {
  return half_width - std::max(std::abs(center_.x()), std::abs(center_.y())) - radius_;
}

// ---------------------------------------------------------------------------
// Cell classification and cut measures

namespace {

struct CellAnalysis {
  CellClass cls = CellClass::Minus;
  std::array<int, 3> sign{};  // -1, 0 (on the curve), +1
  std::array<Side, 3> side{};
};

CellAnalysis analyze_cell(const std::array<Vec2, 3>& pts, const std::array<int, 3>& v, const InterfaceCurve& curve,
                          double eps, int cell) {
  CellAnalysis an;
  int zeros = 0, negatives = 0, positives = 0;
  for (int k = 0; k < 3; ++k) {
    const double phi = curve.signed_distance(pts[k]);
    an.sign[k] = phi <= -eps ? -1 : (phi >= eps ? 1 : 0);
    zeros += an.sign[k] == 0;
    negatives += an.sign[k] < 0;
    positives += an.sign[k] > 0;
  }
  if (zeros >= 2) throw GeometryError(cell, "interface passes through two vertices of the cell");

  if (negatives > 0 && positives > 0) {
    an.cls = CellClass::Cut;
    for (int k = 0; k < 3; ++k) an.side[k] = an.sign[k] > 0 ? Side::Plus : Side::Minus;
  } else {
    an.cls = positives > 0 ? CellClass::Plus : CellClass::Minus;
    an.side.fill(side_of(an.cls));
  }

  // Edges whose end points share a side must not be crossed in their interior.
  for (int k = 0; k < 3; ++k) {
    const int a = k, b = (k + 1) % 3;
    if (an.cls == CellClass::Cut && an.side[a] != an.side[b]) continue;
    const bool fwd = v[a] < v[b];
    const Vec2& p = fwd ? pts[a] : pts[b];
    const Vec2& q = fwd ? pts[b] : pts[a];
    const double len = (q - p).norm();
    for (double t : curve.segment_crossings(p, q, eps)) {
      if (t * len > eps && (1.0 - t) * len > eps)
        throw GeometryError(cell, "interface crosses local edge " + std::to_string(k) +
                                      " twice (at most two crossings on distinct edges allowed)");
    }
  }
  if (an.cls != CellClass::Cut && curve.inside_triangle(pts))
    throw GeometryError(cell, "interface lies entirely inside the cell");
  return an;
}

}  // namespace

Side classify_point(const InterfaceCurve& curve, const Vec2& x, double eps) {
  return curve.signed_distance(x) >= eps ? Side::Plus : Side::Minus;
}

CellClass classify_cell(const TriMesh& mesh, const InterfaceCurve& curve, int cell) {
  return analyze_cell(mesh.cell_points(cell), mesh.cell(cell), curve, geometric_tolerance(mesh.h()), cell).cls;
}

std::vector<Vec2> segment_curve_intersections(const Vec2& p, const Vec2& q, const InterfaceCurve& curve) {
  const double eps = 1e-12 * (q - p).norm();
  std::vector<Vec2> out;
  for (double t : curve.segment_crossings(p, q, eps)) out.emplace_back(p + t * (q - p));
  return out;
}

ArcFrame arc_midpoint(const InterfaceCurve& curve, const Vec2& p1, const Vec2& p2, const Vec2& interior_hint) {
  return curve.arc_midpoint(p1, p2, interior_hint);
}

std::vector<Vec2> CutElement::sub_polygon(Side s) const {
  std::vector<Vec2> poly;
  if (!is_cut()) {
    if (side_of(classification) == s) poly.assign(vertices.begin(), vertices.end());
    return poly;
  }
  for (int k = 0; k < 3; ++k) {
    if (vertex_side[k] == s) poly.push_back(vertices[k]);
    for (const auto& c : crossings)
      if (c.local_edge == k) poly.push_back(c.point);
  }
  return poly;
}

RegionMoments polygon_moments(const std::vector<Vec2>& poly) {
  RegionMoments m;
  const std::size_t n = poly.size();
  if (n < 3) return m;
  double mx = 0.0, my = 0.0, area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const double cr = a.x() * b.y() - b.x() * a.y();
    area += cr;
    mx += (a.x() + b.x()) * cr;
    my += (a.y() + b.y()) * cr;
  }
  m.area = 0.5 * area;
  m.first = Vec2(mx, my) / 6.0;
  return m;
}

namespace {

CutElement measure(const std::array<Vec2, 3>& pts, const std::array<int, 3>& v, const InterfaceCurve& curve,
                   double eps, int cell) {
  const CellAnalysis an = analyze_cell(pts, v, curve, eps, cell);

  CutElement ce;
  ce.cell = cell;
  ce.classification = an.cls;
  ce.vertices = pts;
  ce.vertex_side = an.side;

  const double total = 0.5 * std::abs(cross(pts[1] - pts[0], pts[2] - pts[0]));
  for (int k = 0; k < 3; ++k) {
    const double len = ce.edge_length(k);
    ce.sub_length_minus[k] = ce.vertex_side[k] == Side::Minus ? len : 0.0;
    ce.sub_length_plus[k] = ce.vertex_side[k] == Side::Plus ? len : 0.0;
  }

  if (!ce.is_cut()) {
    const Vec2 c = ce.interior_point();
    if (an.cls == CellClass::Minus) {
      ce.area_minus = total;
      ce.centroid_minus = c;
    } else {
      ce.area_plus = total;
      ce.centroid_plus = c;
    }
    return ce;
  }

  int found = 0;
  for (int k = 0; k < 3; ++k) {
    const int a = k, b = (k + 1) % 3;
    if (an.side[a] == an.side[b]) continue;
    // computed along the globally ascending vertex order so neighbours agree bitwise
    const bool fwd = v[a] < v[b];
    const int lo = fwd ? a : b, hi = fwd ? b : a;
    const Vec2& p = ce.vertices[lo];
    const Vec2& q = ce.vertices[hi];
    double t;
    if (an.sign[lo] == 0) {
      t = 0.0;
    } else if (an.sign[hi] == 0) {
      t = 1.0;
    } else {
      t = curve.transversal_crossing(p, q);
    }
    const Vec2 point = t == 0.0 ? p : (t == 1.0 ? q : Vec2(p + t * (q - p)));
    const double t_local = fwd ? t : 1.0 - t;
    if (found == 2) throw GeometryError(cell, "more than two interface crossings");
    ce.crossings[found++] = {point, k, t_local};

    const double len = ce.edge_length(k);
    const double first = (point - ce.vertices[a]).norm();
    const double second = std::max(len - first, 0.0);
    if (an.side[a] == Side::Minus) {
      ce.sub_length_minus[k] = first;
      ce.sub_length_plus[k] = second;
    } else {
      ce.sub_length_plus[k] = first;
      ce.sub_length_minus[k] = second;
    }
  }
  if (found != 2) throw GeometryError(cell, "cut cell without exactly two crossings");

  const Vec2& p1 = ce.crossings[0].point;
  const Vec2& p2 = ce.crossings[1].point;
  const Vec2 hint = ce.interior_point();
  ce.frame = curve.arc_midpoint(p1, p2, hint);
  ce.arc_length = curve.arc_length(p1, p2, hint);
  ce.cap_side = curve.cap_side(p1, p2, hint);

  const Side inc = ce.cap_side;
  RegionMoments m = polygon_moments(ce.sub_polygon(inc));
  const RegionMoments cap = curve.cap_moments(p1, p2, hint);
  m.area += cap.area;
  m.first += cap.first;
  const RegionMoments whole = polygon_moments({ce.vertices.begin(), ce.vertices.end()});
  RegionMoments rest{total - m.area, whole.first - m.first};
  if (rest.area < 0.0) rest.area = 0.0;

  const RegionMoments& minus = inc == Side::Minus ? m : rest;
  const RegionMoments& plus = inc == Side::Minus ? rest : m;
  ce.area_minus = minus.area;
  ce.area_plus = plus.area;
  ce.centroid_minus = minus.centroid();
  ce.centroid_plus = plus.centroid();
  return ce;
}

}  // namespace

CutElement cut_measures(const TriMesh& mesh, const InterfaceCurve& curve, int cell) {
  return measure(mesh.cell_points(cell), mesh.cell(cell), curve, geometric_tolerance(mesh.h()), cell);
}

CutElement cut_measures(const std::array<Vec2, 3>& tri, const InterfaceCurve& curve) {
  if (cross(tri[1] - tri[0], tri[2] - tri[0]) <= 0.0) throw ParameterError("triangle must be counterclockwise");
  double diam = 0.0;
  for (int k = 0; k < 3; ++k) diam = std::max(diam, (tri[(k + 1) % 3] - tri[k]).norm());
  return measure(tri, {0, 1, 2}, curve, geometric_tolerance(diam), -1);
}

// ---------------------------------------------------------------------------
// Integration over cut regions

double integrate_polygon(const std::vector<Vec2>& poly, const ScalarField& f, int degree) {
  if (poly.size() < 3) return 0.0;
  const int n = points_for_degree(degree);
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
    if (std::abs(cross(poly[i] - poly[0], poly[i + 1] - poly[0])) == 0.0) continue;
    sum += integrate_triangle(poly[0], poly[i], poly[i + 1], n, f);
  }
  return sum;
}

double integrate_cut_region(const CutElement& cut, const InterfaceCurve& curve, Side side, const ScalarField& f,
                            const RegionQuadrature& opts) {
  if (!cut.is_cut()) {
    if (side_of(cut.classification) != side) return 0.0;
    return integrate_polygon({cut.vertices.begin(), cut.vertices.end()}, f, opts.degree);
  }
  const double straight = integrate_polygon(cut.sub_polygon(side), f, opts.degree);
  const Vec2& p1 = cut.crossings[0].point;
  const Vec2& p2 = cut.crossings[1].point;
  const double cap = curve.integrate_cap(p1, p2, cut.interior_point(), f, opts.cap);
  return side == cut.cap_side ? straight + cap : straight - cap;
}

double integrate_cut_region(const CutElement& cut, const InterfaceCurve& curve, Side side, const Polynomial2& p,
                            const RegionQuadrature& opts) {
  return integrate_cut_region(cut, curve, side, ScalarField([&p](const Vec2& x) { return p(x); }), opts);
}

}  // namespace hcife
