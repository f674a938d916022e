#include "hcife/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <tuple>

namespace hcife {

namespace {

constexpr int kMaxLevel = 10;
constexpr std::size_t kMemoryBudget = std::size_t{8} << 30;

}  // namespace

std::size_t estimated_memory_bytes(int level) {
  if (level < 1) return 0;
  const std::size_t n = std::size_t{1} << (level + 3);
  const std::size_t verts = (n + 1) * (n + 1);
  const std::size_t cells = 2 * n * n;
  const std::size_t edges = 3 * n * n + 2 * n;
  // mesh arrays, sparse matrix with ~9 entries per row, assembly triplets and
  // solver work vectors
  return verts * (sizeof(Vec2) + 1 + 9 * 12 + 8 * 8) + cells * (2 * 12 + 9 * 16) + edges * 16;
}

TriMesh TriMesh::uniform(int level) {
  if (level < 1) throw ParameterError("mesh level must be >= 1, got " + std::to_string(level));
  if (level > kMaxLevel || estimated_memory_bytes(level) > kMemoryBudget) {
    throw ResourceError("mesh level " + std::to_string(level) + " needs about " +
                        std::to_string(estimated_memory_bytes(level) >> 20) +
                        " MiB, over the memory budget");
  }

  TriMesh m;
  m.level_ = level;
  m.n_ = 1 << (level + 3);
  m.h_ = std::pow(2.0, -(level + 1.5));

  const int n = m.n_;
  const int stride = n + 1;
  const double step = 2.0 / n;

  m.vertices_.reserve(static_cast<std::size_t>(stride) * stride);
  m.vertex_boundary_.reserve(static_cast<std::size_t>(stride) * stride);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      m.vertices_.emplace_back(-1.0 + i * step, -1.0 + j * step);
      m.vertex_boundary_.push_back(i == 0 || j == 0 || i == n || j == n ? 1 : 0);
    }
  }

  m.cells_.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = j * stride + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + stride;
      const int v11 = v01 + 1;
      m.cells_.push_back({v00, v10, v11});
      m.cells_.push_back({v00, v11, v01});
    }
  }

  m.build_edges();
  return m;
}

void TriMesh::build_edges() {
  // (lo, hi, cell, local edge) sorted by vertex pair
  std::vector<std::tuple<int, int, int, int>> half;
  half.reserve(cells_.size() * 3);
  for (int c = 0; c < num_cells(); ++c) {
    for (int k = 0; k < 3; ++k) {
      int a = cells_[c][k];
      int b = cells_[c][(k + 1) % 3];
      if (a > b) std::swap(a, b);
      half.emplace_back(a, b, c, k);
    }
  }
  std::sort(half.begin(), half.end());

  cell_edges_.assign(cells_.size(), {-1, -1, -1});
  edges_.clear();
  edges_.reserve(half.size() / 2 + n_ * 2);
  for (std::size_t i = 0; i < half.size();) {
    const auto [a, b, c, k] = half[i];
    MeshEdge e{{a, b}, {c, -1}};
    const int id = static_cast<int>(edges_.size());
    cell_edges_[c][k] = id;
    std::size_t j = i + 1;
    if (j < half.size() && std::get<0>(half[j]) == a && std::get<1>(half[j]) == b) {
      const auto [a2, b2, c2, k2] = half[j];
      e.cells[1] = c2;
      if (e.cells[1] < e.cells[0]) std::swap(e.cells[0], e.cells[1]);
      cell_edges_[c2][k2] = id;
      ++j;
    }
    edges_.push_back(e);
    i = j;
  }
}

std::array<Vec2, 3> TriMesh::cell_points(int c) const {
  const auto& t = cells_[c];
  return {vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]};
}

double TriMesh::cell_area(int c) const {
  const auto p = cell_points(c);
  return 0.5 * cross(p[1] - p[0], p[2] - p[0]);
}

double TriMesh::cell_diameter(int c) const {
  const auto p = cell_points(c);
  return std::max({(p[1] - p[0]).norm(), (p[2] - p[1]).norm(), (p[0] - p[2]).norm()});
}

int TriMesh::local_edge(int c, int e) const {
  for (int k = 0; k < 3; ++k)
    if (cell_edges_[c][k] == e) return k;
  return -1;
}

void TriMesh::write(std::ostream& os) const {
  const auto old = os.precision(17);
  for (const auto& v : vertices_) os << "v " << v.x() << ' ' << v.y() << '\n';
  for (const auto& c : cells_) os << "c " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  os.precision(old);
}

TriMesh build_uniform_mesh(int level) { return TriMesh::uniform(level); }

std::pair<int, std::optional<int>> edge_patch(const TriMesh& mesh, int edge) {
  const auto& e = mesh.edge(edge);
  if (e.on_boundary()) return {e.cells[0], std::nullopt};
  return {e.cells[0], e.cells[1]};
}

}  // namespace hcife
