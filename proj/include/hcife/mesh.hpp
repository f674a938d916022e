#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hcife/common.hpp"

namespace hcife {

struct MeshEdge {
  std::array<int, 2> vertices;  // ascending global index
  std::array<int, 2> cells;     // lower cell index first; cells[1] == -1 on the boundary

  bool on_boundary() const { return cells[1] < 0; }
};

/// Structured conforming triangulation of (-1,1)^2.
///
/// The square is divided into N = 2^(level+3) squares per side, each split
/// along its bottom-left to top-right diagonal, so every cell is a right
/// isosceles triangle with diameter h = 2^-(level+3/2). Vertices are numbered
/// row-major from the bottom-left corner; cells are counterclockwise.
/// Local edge k of a cell joins its local vertices k and (k+1)%3.
class TriMesh {
 public:
  static TriMesh uniform(int level);

  int level() const { return level_; }
  int subdivisions() const { return n_; }
  double h() const { return h_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  std::span<const Vec2> vertices() const { return vertices_; }
  const std::array<int, 3>& cell(int c) const { return cells_[c]; }
  std::span<const std::array<int, 3>> cells() const { return cells_; }
  const MeshEdge& edge(int e) const { return edges_[e]; }
  std::span<const MeshEdge> edges() const { return edges_; }
  const std::array<int, 3>& cell_edges(int c) const { return cell_edges_[c]; }

  bool vertex_on_boundary(int v) const { return vertex_boundary_[v] != 0; }
  bool edge_on_boundary(int e) const { return edges_[e].on_boundary(); }

  std::array<Vec2, 3> cell_points(int c) const;
  double cell_area(int c) const;
  double cell_diameter(int c) const;

  /// Local edge number of `e` in cell `c`, or -1.
  int local_edge(int c, int e) const;

  /// Plain-text dump: "v x y" per vertex then "c i j k" per cell.
  void write(std::ostream& os) const;

 private:
  TriMesh() = default;
  void build_edges();

  int level_ = 0;
  int n_ = 0;
  double h_ = 0.0;
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<MeshEdge> edges_;
  std::vector<std::array<int, 3>> cell_edges_;
  std::vector<std::uint8_t> vertex_boundary_;
};

TriMesh build_uniform_mesh(int level);

/// Rough resident size of a level, used by the desk-scale guard.
std::size_t estimated_memory_bytes(int level);

/// Adjacent cells of an edge, lower index first.
std::pair<int, std::optional<int>> edge_patch(const TriMesh& mesh, int edge);

}  // namespace hcife
