#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace hcife;
using testing::pt;
using testing::rel;

namespace {

const Circle circle(Vec2::Zero(), 1.0 / 3.0);
const oracle::Disk disk{{0.0, 0.0}, 1.0 / 3.0};

// frozen from tests/freeze_reference_values.py (mpmath, 40 digits)
constexpr double kAreaMinus = 0.0025999012839324804311;
constexpr double kAreaPlus = 0.0024000987160675195689;
const Vec2 kCentroidMinus(0.3145114340181296022, 0.041471627623575710658);
const Vec2 kCentroidPlus(0.35372211145652008531, 0.024517545202381184138);
const Vec2 kX0(0.33117348077852843233, 0.037884518475820305457);
const Vec2 kHypotenuseCrossing(0.32472191289246471285, 0.075278087107535287147);
constexpr double kArcLength = 0.075933112232637227163;

CutElement reference_cut() { return cut_measures(testing::reference_triangle(), circle); }

}  // namespace

TEST_CASE("classification examples") {
  const auto tri = testing::reference_triangle();
  CHECK(circle.signed_distance(tri[0]) == doctest::Approx(-1.0 / 30.0).epsilon(1e-12));
  CHECK(circle.signed_distance(tri[1]) == doctest::Approx(0.4 - 1.0 / 3.0).epsilon(1e-12));
  CHECK(circle.signed_distance(tri[2]) == doctest::Approx(std::sqrt(0.1) - 1.0 / 3.0).epsilon(1e-12));
  CHECK(reference_cut().classification == CellClass::Cut);

  const std::array<Vec2, 3> inside{Vec2(0.0, 0.0), Vec2(0.1, 0.0), Vec2(0.0, 0.1)};
  CHECK(cut_measures(inside, circle).classification == CellClass::Minus);

  // vertex on the curve, the others inside: Omega^- closure
  const std::array<Vec2, 3> touching{Vec2(1.0 / 3.0, 0.0), Vec2(0.2, 0.1), Vec2(0.2, 0.0)};
  CHECK(classify_point(circle, touching[0], 1e-12) == Side::Minus);
  CHECK(cut_measures(touching, circle).classification == CellClass::Minus);

  const std::array<Vec2, 3> outside{Vec2(0.5, 0.5), Vec2(0.6, 0.5), Vec2(0.5, 0.6)};
  const CutElement ce = cut_measures(outside, circle);
  CHECK(ce.classification == CellClass::Plus);
  CHECK(ce.area_minus == 0.0);
  CHECK(ce.area_plus == doctest::Approx(0.005).epsilon(1e-14));
}

TEST_CASE("classify_cell on the mesh agrees with vertex signs") {
  const TriMesh m = TriMesh::uniform(2);
  int cut = 0;
  for (int c = 0; c < m.num_cells(); ++c) {
    const auto p = m.cell_points(c);
    int in = 0;
    for (const Vec2& x : p) in += x.norm() <= 1.0 / 3.0;
    const CellClass cls = classify_cell(m, circle, c);
    if (in == 3) CHECK(cls == CellClass::Minus);
    if (in == 0) CHECK(cls == CellClass::Plus);
    if (in == 1 || in == 2) CHECK(cls == CellClass::Cut);
    cut += cls == CellClass::Cut;
  }
  CHECK(cut > 0);
}

TEST_CASE("assumption violations are reported") {
  const std::array<Vec2, 3> twice{Vec2(-0.5, 0.1), Vec2(0.5, 0.1), Vec2(0.0, 0.8)};
  CHECK_THROWS_AS(cut_measures(twice, circle), GeometryError);
  const std::array<Vec2, 3> around{Vec2(-0.9, -0.9), Vec2(0.9, -0.9), Vec2(0.0, 0.9)};
  CHECK_THROWS_AS(cut_measures(around, circle), GeometryError);
  const std::array<Vec2, 3> clockwise{Vec2(0.3, 0.0), Vec2(0.3, 0.1), Vec2(0.4, 0.0)};
  CHECK_THROWS_AS(cut_measures(clockwise, circle), ParameterError);
}

TEST_CASE("segment intersections") {
  auto one = segment_curve_intersections(Vec2(0, 0), Vec2(1, 0), circle);
  REQUIRE(one.size() == 1);
  CHECK(one[0].isApprox(Vec2(1.0 / 3.0, 0.0), 1e-15));

  auto two = segment_curve_intersections(Vec2(-1, 0), Vec2(1, 0), circle);
  REQUIRE(two.size() == 2);
  CHECK(two[0].isApprox(Vec2(-1.0 / 3.0, 0.0), 1e-15));
  CHECK(two[1].isApprox(Vec2(1.0 / 3.0, 0.0), 1e-15));

  CHECK(segment_curve_intersections(Vec2(-1, 1.0 / 3.0), Vec2(1, 1.0 / 3.0), circle).empty());
  CHECK(segment_curve_intersections(Vec2(0.5, 0.5), Vec2(0.9, 0.9), circle).empty());
}

TEST_CASE("arc midpoint") {
  const Vec2 p1(1.0 / 3.0, 0.0), p2(0.0, 1.0 / 3.0);
  const ArcFrame f = arc_midpoint(circle, p1, p2, Vec2(0.2, 0.2));
  const Vec2 expect = Vec2(std::cos(std::numbers::pi / 4), std::sin(std::numbers::pi / 4)) / 3.0;
  CHECK((f.x0 - expect).norm() < 1e-15);
  CHECK(std::abs(f.x0.norm() - 1.0 / 3.0) < 1e-12);
  CHECK((f.n0 + f.x0 / f.x0.norm()).norm() < 1e-15);
  CHECK((f.t0 - rotate_cw(f.n0)).norm() == 0.0);
  CHECK(circle.arc_length(p1, p2, Vec2(0.2, 0.2)) == doctest::Approx(std::numbers::pi / 6).epsilon(1e-14));

  // the hint picks the long way round
  const ArcFrame g = arc_midpoint(circle, p1, p2, Vec2(-0.3, -0.3));
  CHECK((g.x0 + expect).norm() < 1e-15);
  CHECK_THROWS_AS(arc_midpoint(circle, p1, p1, Vec2(0.2, 0.2)), DomainError);

  // inclusion swapped: the normal still points out of Omega^+
  const Circle swapped(Vec2::Zero(), 1.0 / 3.0, Side::Plus);
  CHECK((swapped.arc_midpoint(p1, p2, Vec2(0.2, 0.2)).n0 - expect.normalized()).norm() < 1e-15);
}

TEST_CASE("reference cut cell against the high-precision values") {
  const CutElement ce = reference_cut();
  CHECK(rel(ce.area_minus, kAreaMinus) < 1e-12);
  CHECK(rel(ce.area_plus, kAreaPlus) < 1e-12);
  CHECK((ce.centroid_minus - kCentroidMinus).norm() < 1e-12);
  CHECK((ce.centroid_plus - kCentroidPlus).norm() < 1e-12);
  CHECK((ce.frame.x0 - kX0).norm() < 1e-13);
  CHECK(rel(ce.arc_length, kArcLength) < 1e-12);
  bool found = false;
  for (const Crossing& c : ce.crossings) found = found || (c.point - kHypotenuseCrossing).norm() < 1e-14;
  CHECK(found);
  CHECK(ce.vertex_side == std::array<Side, 3>{Side::Minus, Side::Plus, Side::Minus});
}

TEST_CASE("reference cut cell against Monte Carlo") {
  const CutElement ce = reference_cut();
  const oracle::Split mc = oracle::monte_carlo_moments(testing::kReferenceTriangle, disk, 10'000'000, 20240611);
  CHECK(rel(ce.area_minus, mc.inside.area) < 2e-3);
  CHECK(rel(ce.area_plus, mc.outside.area) < 2e-3);
  for (int k = 0; k < 2; ++k) {
    CHECK(rel(ce.centroid_minus[k], mc.inside.centroid[k]) < 2e-3);
    CHECK(rel(ce.centroid_plus[k], mc.outside.centroid[k]) < 2e-3);
  }
}

TEST_CASE("reference cut cell against polygonal clipping") {
  const CutElement ce = reference_cut();
  const oracle::Split cl = oracle::clipped_moments(testing::kReferenceTriangle, disk, 1 << 14);
  CHECK(std::abs(ce.area_minus - cl.inside.area) < 1e-9);
  CHECK(std::abs(ce.area_plus - cl.outside.area) < 1e-9);
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(ce.centroid_minus[k] - cl.inside.centroid[k]) < 1e-9);
    CHECK(std::abs(ce.centroid_plus[k] - cl.outside.centroid[k]) < 1e-9);
  }
}

TEST_CASE("reference cut cell invariants") {
  const CutElement ce = reference_cut();
  CHECK(std::abs(ce.area() - 0.005) < 1e-12 * 0.005);
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(ce.sub_length_minus[k] + ce.sub_length_plus[k] - ce.edge_length(k)) < 1e-12 * ce.edge_length(k));
  CHECK(std::abs(ce.frame.x0.norm() - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(ce.frame.n0.norm() - 1.0) < 1e-14);
  CHECK(std::abs(ce.frame.t0.norm() - 1.0) < 1e-14);
  CHECK(std::abs(ce.frame.n0.dot(ce.frame.t0)) < 1e-14);
  const double chord = (ce.crossings[0].point - ce.crossings[1].point).norm();
  CHECK(ce.arc_length <= 2.0 * chord);
  double em = 0.0, ep = 0.0;
  for (int k = 0; k < 3; ++k) {
    em = std::max(em, ce.sub_length_minus[k]);
    ep = std::max(ep, ce.sub_length_plus[k]);
  }
  CHECK(ce.arc_length <= 6.0 * em);
  CHECK(ce.arc_length <= 6.0 * ep);
}

TEST_CASE("integrate_cut_region consistency") {
  const CutElement ce = reference_cut();
  for (Side s : both_sides) {
    const double one = integrate_cut_region(ce, circle, s, [](const Vec2&) { return 1.0; });
    CHECK(rel(one, ce.area(s)) < 1e-12);
    const double mx = integrate_cut_region(ce, circle, s, [](const Vec2& x) { return x.x(); });
    CHECK(std::abs(mx - ce.area(s) * ce.centroid(s).x()) < 1e-10 * ce.area(s));
  }
  // a quartic against the slice oracle, field and polynomial interfaces
  Polynomial2 p;
  p.coeff(0, 0) = 1.0;
  p.coeff(1, 1) = -3.0;
  p.coeff(4, 0) = 2.0;
  p.coeff(2, 2) = 5.0;
  for (Side s : both_sides) {
    const double ref = oracle::slice_integral(testing::kReferenceTriangle, disk, s == Side::Minus,
                                              [&](double x, double y) { return p(Vec2(x, y)); });
    CHECK(rel(integrate_cut_region(ce, circle, s, p), ref) < 1e-11);
    CHECK(rel(integrate_cut_region(ce, circle, s, [&](const Vec2& x) { return p(x); }), ref) < 1e-11);
    // a smooth non-polynomial integrand: degree 4 is only approximate on the
    // straight pieces, a higher degree converges
    const double ref2 = oracle::slice_integral(testing::kReferenceTriangle, disk, s == Side::Minus,
                                               [](double x, double y) { return std::exp(x) * std::cos(3 * y); });
    auto g = [](const Vec2& x) { return std::exp(x.x()) * std::cos(3 * x.y()); };
    CHECK(rel(integrate_cut_region(ce, circle, s, g), ref2) < 1e-8);
    RegionQuadrature fine;
    fine.degree = 12;
    CHECK(rel(integrate_cut_region(ce, circle, s, g, fine), ref2) < 1e-12);
  }
}

TEST_CASE("x^2 + y^2 over an uncut mesh cell") {
  const TriMesh m = TriMesh::uniform(1);
  const int c = 0;  // bottom-left corner, far from the circle
  const CutElement ce = cut_measures(m, circle, c);
  REQUIRE(ce.classification == CellClass::Plus);
  const auto p = m.cell_points(c);
  // closed form: |T|/6 (sum |v_i|^2 + sum_{i<j} v_i.v_j) for a quadratic form on a triangle
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) s += p[i].dot(p[j]);
  const double exact = m.cell_area(c) / 6.0 * s;
  Polynomial2 q;
  q.coeff(2, 0) = 1.0;
  q.coeff(0, 2) = 1.0;
  CHECK(rel(integrate_cut_region(ce, circle, Side::Plus, q), exact) < 1e-13);
  CHECK(integrate_cut_region(ce, circle, Side::Minus, q) == 0.0);
}

TEST_CASE("total inclusion area converges to pi/9") {
  double prev = 1.0;
  for (int l = 1; l <= 5; ++l) {
    const TriMesh m = TriMesh::uniform(l);
    double sum = 0.0;
    for (int c = 0; c < m.num_cells(); ++c) sum += cut_measures(m, circle, c).area_minus;
    const double err = std::abs(sum - std::numbers::pi / 9.0);
    CHECK(err < 1e-12);
    CHECK(err <= std::max(prev, 1e-13));
    prev = err;
  }
}

TEST_CASE("geometric lemmas on every cut cell, levels 1-5") {
  for (int l = 1; l <= 5; ++l) {
    CAPTURE(l);
    const Discretization disc = testing::make_disc(l, 1.0, 1.0);
    const TriMesh& m = disc.mesh();
    for (int c : disc.cut_cells()) {
      const CutElement& ce = disc.cut(c);
      REQUIRE(ce.crossings[0].local_edge != ce.crossings[1].local_edge);
      const double chord = (ce.crossings[0].point - ce.crossings[1].point).norm();
      CHECK(ce.arc_length <= 2.0 * chord);
      double em = 0.0, ep = 0.0;
      for (int k = 0; k < 3; ++k) {
        em = std::max(em, ce.sub_length_minus[k]);
        ep = std::max(ep, ce.sub_length_plus[k]);
      }
      CHECK(ce.arc_length <= 6.0 * em);
      CHECK(ce.arc_length <= 6.0 * ep);
    }
    // |e^s|^2 <= theta max(|T1^s|, |T2^s|)
    double theta = 0.0;
    for (int e : disc.interface_edges()) {
      const MeshEdge& me = m.edge(e);
      const CutElement g1 = disc.cell_geometry(me.cells[0]);
      const CutElement g2 = disc.cell_geometry(me.cells[1]);
      const int owner = disc.is_cut(me.cells[0]) ? 0 : 1;
      const CutElement& go = owner == 0 ? g1 : g2;
      const int k = m.local_edge(me.cells[owner], e);
      for (Side s : both_sides) {
        const double len = go.sub_length(s, k);
        if (len <= 0.0) continue;
        const double area = std::max(g1.area(s), g2.area(s));
        REQUIRE(area > 0.0);
        theta = std::max(theta, len * len / area);
      }
    }
    MESSAGE("level " << l << ": theta = " << theta);
    CHECK(theta <= 64.0);
  }
}

TEST_CASE("admissibility h < r/2") {
  CHECK_FALSE(testing::make_disc(1, 1.0, 1.0).admissible());
  CHECK(testing::make_disc(2, 1.0, 1.0).admissible());
}
