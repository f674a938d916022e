#pragma once

// Reference computations for the tests. Nothing here calls into hcife: the
// geometry is redone from scratch with slower, simpler methods.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Pt = std::array<double, 2>;
using Tri = std::array<Pt, 3>;

struct Disk {
  Pt center{0.0, 0.0};
  double radius = 1.0 / 3.0;

  double level(const Pt& p) const;  // |p - c|^2 - r^2
  bool contains(const Pt& p) const { return level(p) <= 0.0; }
};

struct Moments {
  double area = 0.0;
  Pt centroid{0.0, 0.0};
};

/// Pieces of a triangle inside and outside a disk.
struct Split {
  Moments inside;
  Moments outside;
};

/// Uniform sampling; the error is a few parts in 1e4 at 1e7 samples.
Split monte_carlo_moments(const Tri& t, const Disk& d, long samples, std::uint64_t seed);

/// Regular polygon with `sides` vertices and the same area as the disk,
/// clipped against the triangle.
Split clipped_moments(const Tri& t, const Disk& d, int sides);

/// Gauss-Legendre nodes and weights on [0,1], by Newton iteration on P_n.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};
Rule gauss(int n);

/// Integral of f over t ∩ disk (inside) or t \ disk. Vertical slices with the
/// exact y-intervals, outer panels split at every kink.
using Field = std::function<double(double, double)>;
double slice_integral(const Tri& t, const Disk& d, bool inside, const Field& f, int points = 40);

/// Dense Gaussian elimination with full pivoting. Row-major n x n.
std::vector<double> solve_full_pivot(std::vector<double> a, std::vector<double> b, int n);

/// Crossing of the edge p->q with the circle, by bisection on the level set.
Pt bisect_crossing(const Pt& p, const Pt& q, const Disk& d);

/// Barycentric coordinates: lambda_j = off[j] + grad[j] . x
struct Bary {
  std::array<Pt, 3> grad;
  std::array<double, 3> off;
  double lambda(int j, const Pt& x) const { return off[j] + grad[j][0] * x[0] + grad[j][1] * x[1]; }
};
Bary barycentric(const Tri& t);

/// Coupled local basis w_i^s = sum_j a[s][i][j] lambda_j; s = 0 inside the
/// disk, 1 outside. Uncut triangles get the identity on both sides.
struct Basis {
  bool cut = false;
  Bary bary;
  std::array<std::array<std::array<double, 3>, 3>, 2> a{};
  std::array<bool, 3> vertex_inside{};
  std::array<Pt, 2> crossings{};
  Pt x0{}, n0{}, t0{};

  double value(int s, int i, const Pt& x) const;
  Pt gradient(int s, int i) const;
};
Basis brute_basis(const Tri& t, const Disk& d, double rho_in, double rho_out, bool two_point = false);

/// Dense a_h and load for a triangulation with a given coefficient numbering.
struct MeshView {
  std::vector<Pt> vertices;
  std::vector<std::array<int, 3>> cells;      // counterclockwise
  std::vector<std::array<int, 3>> cell_dofs;  // coefficient of each local vertex
  int num_dofs = 0;
};

enum class Form { Main, E2, E3, E4, E5 };

struct DenseSystem {
  std::vector<double> matrix;  // row-major num_dofs^2
  std::vector<double> load;
  int n = 0;
  double at(int i, int j) const { return matrix[static_cast<std::size_t>(i) * n + j]; }
};

/// Volume terms by sliced areas, loads by sliced integrals of f w_i and edge
/// terms by composite Gauss (panels x points per sub-edge) on every interior
/// edge of a cut triangle.
DenseSystem dense_assembly(const MeshView& mesh, const Disk& d, double rho_in, double rho_out, Form form,
                           double gamma, double gamma_f, double f_in, double f_out, int panels = 8, int points = 8);

}  // namespace oracle
