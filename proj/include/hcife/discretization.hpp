#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <span>
#include <vector>

#include "hcife/ife_space.hpp"
#include "hcife/interface_geometry.hpp"
#include "hcife/mesh.hpp"

namespace hcife {

/// How cells share coefficients. Broken: continuity is imposed only across
/// edges that do not touch a cut cell, so every cut cell, and every fan of
/// uncut cells separated by cut cells, carries its own vertex coefficients.
/// Conforming: one coefficient per mesh vertex.
enum class GlobalSpace : std::uint8_t { Broken, Conforming };

std::string to_string(GlobalSpace s);
std::optional<GlobalSpace> parse_global_space(std::string_view s);

/// Mesh plus everything the interface induces on it: cell classes, cut
/// geometry and coupled bases of the cut cells. Immutable after construction.
class Discretization {
 public:
  Discretization(TriMesh mesh, std::shared_ptr<const InterfaceCurve> curve, Diffusion rho,
                 BasisVariant variant = BasisVariant::MidpointTangent, GlobalSpace space = GlobalSpace::Broken);

  const TriMesh& mesh() const { return mesh_; }
  const InterfaceCurve& curve() const { return *curve_; }
  std::shared_ptr<const InterfaceCurve> curve_ptr() const { return curve_; }
  const Diffusion& rho() const { return rho_; }
  BasisVariant variant() const { return variant_; }
  GlobalSpace space() const { return space_; }

  CellClass classification(int c) const { return class_[c]; }
  bool is_cut(int c) const { return cut_index_[c] >= 0; }

  /// Geometry record; built on the fly for uncut cells.
  CutElement cell_geometry(int c) const;
  const CutElement& cut(int c) const { return cuts_[cut_index_[c]]; }

  /// Local basis; the standard hat functions on uncut cells.
  IFEBasis basis(int c) const;
  const IFEBasis& cut_basis(int c) const { return bases_[cut_index_[c]]; }

  std::span<const int> cut_cells() const { return cut_cells_; }
  /// Interior edges of cut cells, ascending.
  std::span<const int> interface_edges() const { return interface_edges_; }
  bool is_interface_edge(int e) const { return edge_flag_[e] != 0; }

  /// Side used for the nodal value at a vertex.
  Side vertex_side(int v) const { return vertex_side_[v]; }

  /// Coefficient numbering. Coefficient d sits on mesh vertex dof_vertex(d).
  int num_dofs() const { return static_cast<int>(dof_vertex_.size()); }
  int dof(int c, int local) const { return cell_dofs_[c][local]; }
  const std::array<int, 3>& cell_dofs(int c) const { return cell_dofs_[c]; }
  int dof_vertex(int d) const { return dof_vertex_[d]; }
  /// Side whose branch the coefficient is the nodal value of.
  Side dof_side(int d) const { return vertex_side_[dof_vertex_[d]]; }
  std::array<double, 3> local_values(std::span<const double> u, int c) const {
    const auto& d = cell_dofs_[c];
    return {u[d[0]], u[d[1]], u[d[2]]};
  }

  /// h < r/2 with r the tubular radius of the curve.
  bool admissible() const;

 private:
  TriMesh mesh_;
  std::shared_ptr<const InterfaceCurve> curve_;
  Diffusion rho_;
  BasisVariant variant_;
  GlobalSpace space_;
  std::vector<CellClass> class_;
  std::vector<int> cut_index_;
  std::vector<int> cut_cells_;
  std::vector<CutElement> cuts_;
  std::vector<IFEBasis> bases_;
  std::vector<int> interface_edges_;
  std::vector<std::uint8_t> edge_flag_;
  std::vector<Side> vertex_side_;
  std::vector<std::array<int, 3>> cell_dofs_;
  std::vector<int> dof_vertex_;

  void number_dofs();
};

}  // namespace hcife
