#pragma once

#include <array>

#include <Eigen/Core>

#include "hcife/common.hpp"
#include "hcife/interface_geometry.hpp"

namespace hcife {

/// Barycentric coordinates of a triangle: lambda_j(x) = offset_j + grad_j . x
struct Barycentric {
  std::array<Vec2, 3> grad;
  std::array<double, 3> offset{};

  static Barycentric of(const std::array<Vec2, 3>& tri);
  std::array<double, 3> operator()(const Vec2& x) const;
};

/// Linear function written in the interface frame at x0:
/// v(x) = value + tangential * t0.(x - x0) + normal * n0.(x - x0).
struct FrameLinear {
  double value = 0.0;
  double tangential = 0.0;
  double normal = 0.0;
};

/// Maps a linear function on T+ to the linear function on T- that matches
/// its value and tangential slope at x0 and its flux rho D_n0.
class UpsilonMap {
 public:
  UpsilonMap(const ArcFrame& frame, const Diffusion& rho);

  FrameLinear apply(const FrameLinear& v) const;

  FrameLinear from_affine(double value_at_x0, const Vec2& gradient) const;
  double evaluate(const FrameLinear& v, const Vec2& x) const;
  Vec2 gradient(const FrameLinear& v) const;

  const ArcFrame& frame() const { return frame_; }

 private:
  ArcFrame frame_;
  Diffusion rho_;
};

enum class BasisVariant : std::uint8_t {
  MidpointTangent,  // value, tangential slope and flux matched at x0
  TwoPoint,         // value matched at both crossings, flux at x0
};

/// Local basis w_i^s = sum_j a^s_{ij} lambda_j on one cell. Uncut cells carry
/// the identity coefficients on both sides.
struct IFEBasis {
  int cell = -1;
  BasisVariant variant = BasisVariant::MidpointTangent;
  std::array<Vec2, 3> vertices;
  Barycentric bary;
  std::array<Eigen::Matrix3d, 2> coeff;             // [side](i, j)
  std::array<std::array<Vec2, 3>, 2> grad;          // [side][i]
  double condition = 1.0;                           // of the equilibrated 6x6 system

  double value(Side s, int i, const Vec2& x) const;
  std::array<double, 3> values(Side s, const Vec2& x) const;
  const Vec2& gradient(Side s, int i) const { return grad[index(s)][i]; }
};

/// Largest admissible condition estimate of the local system.
inline constexpr double kBasisConditionLimit = 1e12;

IFEBasis standard_basis(int cell, const std::array<Vec2, 3>& tri);

IFEBasis build_local_basis(const CutElement& cut, const Diffusion& rho,
                           BasisVariant variant = BasisVariant::MidpointTangent);

struct BasisValues {
  std::array<double, 3> value{};
  std::array<Vec2, 3> grad;
};

/// Values and gradients of the three basis functions on one side at x, which
/// must lie in the cell up to `tol`.
BasisValues eval_basis(const IFEBasis& basis, const Vec2& x, Side side, double tol = 1e-12);

}  // namespace hcife
