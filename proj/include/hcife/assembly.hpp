#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hcife/forms.hpp"
#include "hcife/sparse.hpp"

namespace hcife {

/// a_h over all coefficients of the global space, no boundary conditions.
CsrMatrix assemble_operator(const Discretization& disc, const MethodVariant& method);

/// (f, v) over all coefficients.
std::vector<double> assemble_load(const Discretization& disc, const ProblemSpec& spec,
                                  const RegionQuadrature& quad = {});

/// Reduced system over the coefficients off the boundary. Boundary values are
/// the nodal interpolant of the exact solution, lifted into the right-hand side.
struct SparseSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
  std::vector<int> free_of_dof;  // -1 on the boundary
  std::vector<int> dof_of_free;
  std::vector<std::uint8_t> boundary;
  std::vector<double> boundary_values;  // per coefficient, 0 off the boundary

  int num_dofs() const { return matrix.rows(); }
  /// Full coefficient vector from the free values.
  std::vector<double> expand(std::span<const double> free) const;
};

SparseSystem assemble(const Discretization& disc, const ProblemSpec& spec, const MethodVariant& method);

/// Splits a full operator and load into the reduced system.
SparseSystem reduce_dirichlet(const CsrMatrix& full, std::span<const double> load, const Discretization& disc,
                              std::span<const double> boundary_values);

}  // namespace hcife
