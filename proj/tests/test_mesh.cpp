#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "hcife/mesh.hpp"

using namespace hcife;

TEST_CASE("level 1 has 16 squares per side") {
  const TriMesh m = TriMesh::uniform(1);
  CHECK(m.subdivisions() == 16);
  CHECK(m.num_cells() == 512);
  CHECK(m.num_vertices() == 289);
  CHECK(m.h() == doctest::Approx(0.17677669529663687).epsilon(1e-15));
}

TEST_CASE("counts, Euler relation and h over levels") {
  for (int l = 1; l <= 4; ++l) {
    const TriMesh m = TriMesh::uniform(l);
    const int n = 1 << (l + 3);
    CHECK(m.num_vertices() == (n + 1) * (n + 1));
    CHECK(m.num_cells() == 2 * n * n);
    CHECK(m.num_edges() == 3 * n * n + 2 * n);
    const int euler = m.num_vertices() - m.num_edges() + m.num_cells();
    CHECK(euler == 1);
    CHECK(m.h() == doctest::Approx(std::pow(2.0, -(l + 1.5))).epsilon(1e-15));
  }
}

TEST_CASE("cells are counterclockwise right isosceles triangles of diameter h") {
  for (int l = 1; l <= 3; ++l) {
    const TriMesh m = TriMesh::uniform(l);
    double total = 0.0;
    for (int c = 0; c < m.num_cells(); ++c) {
      const auto p = m.cell_points(c);
      const double a = 0.5 * cross(p[1] - p[0], p[2] - p[0]);
      REQUIRE(a > 0.0);
      CHECK(m.cell_area(c) == doctest::Approx(a).epsilon(1e-14));
      CHECK(m.cell_diameter(c) == doctest::Approx(m.h()).epsilon(1e-14));
      total += a;
      double min_angle = 4.0;
      for (int k = 0; k < 3; ++k) {
        const Vec2 u = p[(k + 1) % 3] - p[k];
        const Vec2 v = p[(k + 2) % 3] - p[k];
        min_angle = std::min(min_angle, std::acos(u.dot(v) / (u.norm() * v.norm())));
      }
      CHECK(min_angle == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
    }
    CHECK(total == doctest::Approx(4.0).epsilon(1e-12));
  }
}

TEST_CASE("edge list is consistent with the cells") {
  const TriMesh m = TriMesh::uniform(2);
  std::set<std::pair<int, int>> seen;
  int boundary = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    const MeshEdge& me = m.edge(e);
    CHECK(me.vertices[0] < me.vertices[1]);
    CHECK(seen.insert({me.vertices[0], me.vertices[1]}).second);
    if (me.on_boundary()) {
      ++boundary;
      CHECK(m.vertex_on_boundary(me.vertices[0]));
      CHECK(m.vertex_on_boundary(me.vertices[1]));
      continue;
    }
    CHECK(me.cells[0] < me.cells[1]);
    // conforming: both endpoints are vertices of both cells
    for (int c : me.cells) {
      const auto& cv = m.cell(c);
      for (int v : me.vertices) CHECK(std::find(cv.begin(), cv.end(), v) != cv.end());
    }
  }
  CHECK(boundary == 4 * m.subdivisions());
  for (int c = 0; c < m.num_cells(); ++c)
    for (int k = 0; k < 3; ++k) {
      const int e = m.cell_edges(c)[k];
      CHECK(m.local_edge(c, e) == k);
      const auto& cv = m.cell(c);
      const std::pair<int, int> key{std::min(cv[k], cv[(k + 1) % 3]), std::max(cv[k], cv[(k + 1) % 3])};
      CHECK(key == std::pair<int, int>{m.edge(e).vertices[0], m.edge(e).vertices[1]});
    }
}

TEST_CASE("edge_patch") {
  const TriMesh m = TriMesh::uniform(1);
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto [a, b] = edge_patch(m, e);
    if (m.edge_on_boundary(e)) {
      CHECK_FALSE(b.has_value());
    } else {
      REQUIRE(b.has_value());
      CHECK(a < *b);
    }
  }
  // the bottom-left square: its diagonal joins its two triangles
  const Vec2 corner(-1.0, -1.0);
  const double s = 2.0 / m.subdivisions();
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& v = m.edge(e).vertices;
    if ((m.vertex(v[0]) - corner).norm() < 1e-14 && (m.vertex(v[1]) - (corner + Vec2(s, s))).norm() < 1e-14) {
      const auto [a, b] = edge_patch(m, e);
      REQUIRE(b.has_value());
      for (int c : {a, *b}) CHECK(m.cell_area(c) == doctest::Approx(0.5 * s * s));
    }
  }
}

TEST_CASE("vertex numbering is row-major from the bottom-left corner") {
  const TriMesh m = TriMesh::uniform(1);
  CHECK(m.vertex(0).isApprox(Vec2(-1, -1)));
  CHECK(m.vertex(16).isApprox(Vec2(1, -1)));
  CHECK(m.vertex(288).isApprox(Vec2(1, 1)));
  CHECK(m.vertex_on_boundary(0));
  CHECK_FALSE(m.vertex_on_boundary(18));
}

TEST_CASE("dump format") {
  const TriMesh m = TriMesh::uniform(1);
  std::ostringstream os;
  m.write(os);
  std::istringstream in(os.str());
  int nv = 0, nc = 0;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      double x, y;
      REQUIRE(static_cast<bool>(ls >> x >> y));
      CHECK(Vec2(x, y).isApprox(m.vertex(nv), 1e-15));
      ++nv;
    } else if (tag == "c") {
      std::array<int, 3> c;
      REQUIRE(static_cast<bool>(ls >> c[0] >> c[1] >> c[2]));
      CHECK(c == m.cell(nc));
      ++nc;
    }
  }
  CHECK(nv == m.num_vertices());
  CHECK(nc == m.num_cells());
}

TEST_CASE("invalid and oversized levels") {
  CHECK_THROWS_AS(TriMesh::uniform(0), ParameterError);
  CHECK_THROWS_AS(TriMesh::uniform(20), ResourceError);
  CHECK(estimated_memory_bytes(6) > estimated_memory_bytes(5));
}
