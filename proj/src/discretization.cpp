#include "hcife/discretization.hpp"

#include <numeric>

namespace hcife {

Discretization::Discretization(TriMesh mesh, std::shared_ptr<const InterfaceCurve> curve, Diffusion rho,
                               BasisVariant variant, GlobalSpace space)
    : mesh_(std::move(mesh)), curve_(std::move(curve)), rho_(rho), variant_(variant), space_(space) {
  if (!curve_) throw ParameterError("discretization needs an interface curve");
  if (!(rho_.minus > 0.0) || !(rho_.plus > 0.0)) throw ParameterError("diffusion coefficients must be positive");
  if (!(curve_->clearance_to_square(1.0) > 0.0))
    throw ParameterError("interface must stay strictly inside the domain (-1,1)^2");

  const int nc = mesh_.num_cells();
  class_.resize(nc);
  cut_index_.assign(nc, -1);
  vertex_side_.assign(mesh_.num_vertices(), Side::Plus);

  const double eps = geometric_tolerance(mesh_.h());
  for (int v = 0; v < mesh_.num_vertices(); ++v) vertex_side_[v] = classify_point(*curve_, mesh_.vertex(v), eps);

  for (int c = 0; c < nc; ++c) {
    CutElement ce = cut_measures(mesh_, *curve_, c);
    class_[c] = ce.classification;
    if (!ce.is_cut()) continue;
    cut_index_[c] = static_cast<int>(cuts_.size());
    cut_cells_.push_back(c);
    bases_.push_back(build_local_basis(ce, rho_, variant_));
    cuts_.push_back(std::move(ce));
  }

  edge_flag_.assign(mesh_.num_edges(), 0);
  for (int e = 0; e < mesh_.num_edges(); ++e) {
    const auto& ed = mesh_.edge(e);
    if (ed.on_boundary()) continue;  // jumps across the outer boundary are undefined
    if (is_cut(ed.cells[0]) || is_cut(ed.cells[1])) {
      edge_flag_[e] = 1;
      interface_edges_.push_back(e);
    }
  }
  number_dofs();
}

void Discretization::number_dofs() {
  const int nc = mesh_.num_cells();
  cell_dofs_.resize(nc);
  if (space_ == GlobalSpace::Conforming) {
    for (int c = 0; c < nc; ++c) cell_dofs_[c] = mesh_.cell(c);
    dof_vertex_.resize(mesh_.num_vertices());
    std::iota(dof_vertex_.begin(), dof_vertex_.end(), 0);
    return;
  }
  // union-find over (cell, local vertex) slots, merged across edges with continuity
  std::vector<int> parent(3 * static_cast<std::size_t>(nc));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < mesh_.num_edges(); ++e) {
    const MeshEdge& ed = mesh_.edge(e);
    if (ed.on_boundary() || edge_flag_[e]) continue;
    const auto& c1 = mesh_.cell(ed.cells[0]);
    const auto& c2 = mesh_.cell(ed.cells[1]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (c1[i] == c2[j]) {
          const int a = find(3 * ed.cells[0] + i);
          const int b = find(3 * ed.cells[1] + j);
          parent[std::max(a, b)] = std::min(a, b);
        }
  }
  std::vector<int> number(parent.size(), -1);
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < 3; ++i) {
      const int r = find(3 * c + i);
      if (number[r] < 0) {
        number[r] = static_cast<int>(dof_vertex_.size());
        dof_vertex_.push_back(mesh_.cell(c)[i]);
      }
      cell_dofs_[c][i] = number[r];
    }
}

std::string to_string(GlobalSpace s) { return s == GlobalSpace::Conforming ? "conforming" : "broken"; }

std::optional<GlobalSpace> parse_global_space(std::string_view s) {
  if (s == "broken") return GlobalSpace::Broken;
  if (s == "conforming") return GlobalSpace::Conforming;
  return std::nullopt;
}

CutElement Discretization::cell_geometry(int c) const {
  if (is_cut(c)) return cut(c);
  CutElement ce;
  ce.cell = c;
  ce.classification = class_[c];
  ce.vertices = mesh_.cell_points(c);
  const Side s = side_of(class_[c]);
  ce.vertex_side.fill(s);
  const double area = mesh_.cell_area(c);
  const Vec2 centroid = ce.interior_point();
  for (int k = 0; k < 3; ++k) {
    const double len = ce.edge_length(k);
    (s == Side::Minus ? ce.sub_length_minus : ce.sub_length_plus)[k] = len;
  }
  if (s == Side::Minus) {
    ce.area_minus = area;
    ce.centroid_minus = centroid;
  } else {
    ce.area_plus = area;
    ce.centroid_plus = centroid;
  }
  return ce;
}

IFEBasis Discretization::basis(int c) const {
  if (is_cut(c)) return cut_basis(c);
  IFEBasis b = standard_basis(c, mesh_.cell_points(c));
  b.variant = variant_;
  return b;
}

bool Discretization::admissible() const { return mesh_.h() < 0.5 * curve_->tubular_radius(); }

}  // namespace hcife
