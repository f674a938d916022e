#include "hcife/assembly.hpp"

namespace hcife {

CsrMatrix assemble_operator(const Discretization& disc, const MethodVariant& method) {
  method.validate();
  const TriMesh& mesh = disc.mesh();
  std::vector<Triplet> t;
  t.reserve(9 * static_cast<std::size_t>(mesh.num_cells()) + 36 * disc.interface_edges().size());

  for (int c = 0; c < mesh.num_cells(); ++c) {
    const Eigen::Matrix3d k = volume_term(disc, c);
    const auto& d = disc.cell_dofs(c);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.push_back({d[i], d[j], k(i, j)});
  }
  for (int e : disc.interface_edges()) {
    const EdgeBlock blk = edge_terms(disc, e, method);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        if (blk.matrix(i, j) != 0.0) t.push_back({blk.dofs[i], blk.dofs[j], blk.matrix(i, j)});
  }
  return CsrMatrix::from_triplets(disc.num_dofs(), disc.num_dofs(), std::move(t));
}

std::vector<double> assemble_load(const Discretization& disc, const ProblemSpec& spec, const RegionQuadrature& quad) {
  std::vector<double> b(disc.num_dofs(), 0.0);
  for (int c = 0; c < disc.mesh().num_cells(); ++c) {
    const Eigen::Vector3d f = load_vector(disc, c, spec, quad);
    const auto& d = disc.cell_dofs(c);
    for (int i = 0; i < 3; ++i) b[d[i]] += f(i);
  }
  return b;
}

std::vector<double> SparseSystem::expand(std::span<const double> free) const {
  std::vector<double> u(boundary_values.begin(), boundary_values.end());
  for (std::size_t d = 0; d < u.size(); ++d)
    if (free_of_dof[d] >= 0) u[d] = free[free_of_dof[d]];
  return u;
}

SparseSystem reduce_dirichlet(const CsrMatrix& full, std::span<const double> load, const Discretization& disc,
                              std::span<const double> boundary_values) {
  SparseSystem sys;
  const int nd = disc.num_dofs();
  if (full.rows() != nd || static_cast<int>(load.size()) != nd || static_cast<int>(boundary_values.size()) != nd)
    throw ParameterError("reduce_dirichlet: sizes do not match the global space");
  sys.free_of_dof.assign(nd, -1);
  sys.boundary.assign(nd, 0);
  sys.boundary_values.assign(nd, 0.0);
  for (int d = 0; d < nd; ++d) {
    if (disc.mesh().vertex_on_boundary(disc.dof_vertex(d))) {
      sys.boundary[d] = 1;
      sys.boundary_values[d] = boundary_values[d];
    } else {
      sys.free_of_dof[d] = static_cast<int>(sys.dof_of_free.size());
      sys.dof_of_free.push_back(d);
    }
  }
  const int n = static_cast<int>(sys.dof_of_free.size());
  sys.rhs.resize(n);
  std::vector<Triplet> t;
  t.reserve(full.nnz());
  const auto rp = full.row_offsets();
  const auto ci = full.column_indices();
  const auto val = full.values();
  for (int i = 0; i < n; ++i) {
    const int d = sys.dof_of_free[i];
    double r = load[d];
    for (int k = rp[d]; k < rp[d + 1]; ++k) {
      const int w = ci[k];
      if (sys.boundary[w])
        r -= val[k] * sys.boundary_values[w];
      else
        t.push_back({i, sys.free_of_dof[w], val[k]});
    }
    sys.rhs[i] = r;
  }
  sys.matrix = CsrMatrix::from_triplets(n, n, std::move(t));
  return sys;
}

SparseSystem assemble(const Discretization& disc, const ProblemSpec& spec, const MethodVariant& method) {
  std::vector<double> g(disc.num_dofs(), 0.0);
  for (int d = 0; d < disc.num_dofs(); ++d) {
    const int v = disc.dof_vertex(d);
    if (disc.mesh().vertex_on_boundary(v)) g[d] = spec.dirichlet(disc.mesh().vertex(v), disc.vertex_side(v));
  }
  const CsrMatrix a = assemble_operator(disc, method);
  const std::vector<double> b = assemble_load(disc, spec);
  return reduce_dirichlet(a, b, disc, g);
}

}  // namespace hcife
