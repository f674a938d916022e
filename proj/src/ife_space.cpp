#include "hcife/ife_space.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

namespace hcife {

Barycentric Barycentric::of(const std::array<Vec2, 3>& tri) {
  Barycentric b;
  for (int j = 0; j < 3; ++j) {
    const Vec2& p = tri[(j + 1) % 3];
    const Vec2& q = tri[(j + 2) % 3];
    const Vec2 e = q - p;
    const double denom = cross(e, tri[j] - p);
    // lambda_j(x) = cross(e, x - p) / denom
    b.grad[j] = Vec2(-e.y(), e.x()) / denom;
    b.offset[j] = -cross(e, p) / denom;
  }
  return b;
}

std::array<double, 3> Barycentric::operator()(const Vec2& x) const {
  return {offset[0] + grad[0].dot(x), offset[1] + grad[1].dot(x), offset[2] + grad[2].dot(x)};
}

// ---------------------------------------------------------------------------

UpsilonMap::UpsilonMap(const ArcFrame& frame, const Diffusion& rho) : frame_(frame), rho_(rho) {
  if (!(rho.minus > 0.0)) throw ParameterError("rho^- must be positive");
  if (!(rho.plus > 0.0)) throw ParameterError("rho^+ must be positive");
}

FrameLinear UpsilonMap::apply(const FrameLinear& v) const {
  return {v.value, v.tangential, rho_.plus / rho_.minus * v.normal};
}

FrameLinear UpsilonMap::from_affine(double value_at_x0, const Vec2& gradient) const {
  return {value_at_x0, gradient.dot(frame_.t0), gradient.dot(frame_.n0)};
}

double UpsilonMap::evaluate(const FrameLinear& v, const Vec2& x) const {
  const Vec2 d = x - frame_.x0;
  return v.value + v.tangential * frame_.t0.dot(d) + v.normal * frame_.n0.dot(d);
}

Vec2 UpsilonMap::gradient(const FrameLinear& v) const { return v.tangential * frame_.t0 + v.normal * frame_.n0; }

// ---------------------------------------------------------------------------

double IFEBasis::value(Side s, int i, const Vec2& x) const {
  const auto lam = bary(x);
  const auto& a = coeff[index(s)];
  return a(i, 0) * lam[0] + a(i, 1) * lam[1] + a(i, 2) * lam[2];
}

std::array<double, 3> IFEBasis::values(Side s, const Vec2& x) const {
  const auto lam = bary(x);
  const auto& a = coeff[index(s)];
  std::array<double, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = a(i, 0) * lam[0] + a(i, 1) * lam[1] + a(i, 2) * lam[2];
  return out;
}

IFEBasis standard_basis(int cell, const std::array<Vec2, 3>& tri) {
  IFEBasis b;
  b.cell = cell;
  b.vertices = tri;
  b.bary = Barycentric::of(tri);
  b.coeff = {Eigen::Matrix3d::Identity(), Eigen::Matrix3d::Identity()};
  for (Side s : both_sides)
    for (int i = 0; i < 3; ++i) b.grad[index(s)][i] = b.bary.grad[i];
  return b;
}

IFEBasis build_local_basis(const CutElement& cut, const Diffusion& rho, BasisVariant variant) {
  if (!(rho.minus > 0.0) || !(rho.plus > 0.0)) throw ParameterError("diffusion coefficients must be positive");
  if (!cut.is_cut()) {
    IFEBasis b = standard_basis(cut.cell, cut.vertices);
    b.variant = variant;
    return b;
  }

  const Barycentric bary = Barycentric::of(cut.vertices);
  const ArcFrame& fr = cut.frame;

  // unknowns: [a+_1 a+_2 a+_3 a-_1 a-_2 a-_3]
  using Mat6 = Eigen::Matrix<double, 6, 6>;
  Mat6 A = Mat6::Zero();
  for (int j = 0; j < 3; ++j) A(j, cut.vertex_side[j] == Side::Plus ? j : 3 + j) = 1.0;

  auto continuity_row = [&](int row, const Vec2& x) {
    const auto lam = bary(x);
    for (int k = 0; k < 3; ++k) {
      A(row, k) = lam[k];
      A(row, 3 + k) = -lam[k];
    }
  };
  if (variant == BasisVariant::MidpointTangent) {
    continuity_row(3, fr.x0);
    for (int k = 0; k < 3; ++k) {
      const double dt = bary.grad[k].dot(fr.t0);
      A(4, k) = dt;
      A(4, 3 + k) = -dt;
    }
  } else {
    continuity_row(3, cut.crossings[0].point);
    continuity_row(4, cut.crossings[1].point);
  }
  for (int k = 0; k < 3; ++k) {
    const double dn = bary.grad[k].dot(fr.n0);
    A(5, k) = rho.plus * dn;
    A(5, 3 + k) = -rho.minus * dn;
  }

  // row equilibration: the gate measures geometric degeneracy, not contrast
  for (int r = 0; r < 6; ++r) {
    const double s = A.row(r).cwiseAbs().maxCoeff();
    if (s > 0.0) A.row(r) /= s;
  }

  auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os.precision(17);
    os << why << "; vertices (" << cut.vertices[0].transpose() << "), (" << cut.vertices[1].transpose() << "), ("
       << cut.vertices[2].transpose() << "), crossings (" << cut.crossings[0].point.transpose() << "), ("
       << cut.crossings[1].point.transpose() << ")";
    throw BasisError(cut.cell, os.str());
  };

  Eigen::PartialPivLU<Mat6> lu(A);
  const Mat6 inv = lu.inverse();
  const double cond = A.cwiseAbs().colwise().sum().maxCoeff() * inv.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(cond) || cond > kBasisConditionLimit) fail("local basis system is numerically singular");

  IFEBasis b;
  b.cell = cut.cell;
  b.variant = variant;
  b.vertices = cut.vertices;
  b.bary = bary;
  b.condition = cond;
  for (int i = 0; i < 3; ++i) {
    // right-hand side e_i in the nodal rows, which were equilibrated by 1
    Eigen::Matrix<double, 6, 1> rhs = Eigen::Matrix<double, 6, 1>::Zero();
    rhs(i) = 1.0;
    const Eigen::Matrix<double, 6, 1> a = lu.solve(rhs);
    for (int j = 0; j < 3; ++j) {
      b.coeff[index(Side::Plus)](i, j) = a(j);
      b.coeff[index(Side::Minus)](i, j) = a(3 + j);
    }
  }
  for (Side s : both_sides) {
    for (int i = 0; i < 3; ++i) {
      Vec2 g = Vec2::Zero();
      for (int j = 0; j < 3; ++j) g += b.coeff[index(s)](i, j) * bary.grad[j];
      b.grad[index(s)][i] = g;
    }
  }
  return b;
}

BasisValues eval_basis(const IFEBasis& basis, const Vec2& x, Side side, double tol) {
  const auto lam = basis.bary(x);
  for (double l : lam) {
    if (l < -tol) {
      std::ostringstream os;
      os << "point (" << x.transpose() << ") lies outside cell " << basis.cell;
      throw DomainError(os.str());
    }
  }
  BasisValues out;
  const auto& a = basis.coeff[index(side)];
  for (int i = 0; i < 3; ++i) {
    out.value[i] = a(i, 0) * lam[0] + a(i, 1) * lam[1] + a(i, 2) * lam[2];
    out.grad[i] = basis.grad[index(side)][i];
  }
  return out;
}

}  // namespace hcife
