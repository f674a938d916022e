#pragma once

#include <array>
#include <span>
#include <vector>

#include "hcife/common.hpp"

namespace hcife {

struct QuadPoint1D {
  double x;  // on [0,1]
  double w;
};

struct QuadPoint2D {
  Vec2 x;
  double w;
};

/// n-point Gauss-Legendre rule mapped to [0,1]; exact for degree 2n-1.
std::span<const QuadPoint1D> gauss_legendre(int n);

/// Collapsed (Duffy) tensor Gauss rule on the triangle (a,b,c), weights
/// including the area. With n points per direction it is exact for
/// polynomials of total degree 2n-2.
std::vector<QuadPoint2D> triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int n);

/// Points per direction giving exactness for the requested total degree.
inline int points_for_degree(int degree) { return (degree + 3) / 2; }

/// Integrate f over the triangle (a,b,c) with the n-point collapsed rule.
template <class F>
double integrate_triangle(const Vec2& a, const Vec2& b, const Vec2& c, int n, F&& f) {
  const auto rule = gauss_legendre(n);
  const double jac = std::abs(cross(b - a, c - a));
  double sum = 0.0;
  for (const auto& qu : rule) {
    double inner = 0.0;
    for (const auto& qv : rule) {
      const double s = qu.x;
      const double t = qv.x * (1.0 - qu.x);
      inner += qv.w * f(Vec2(a + s * (b - a) + t * (c - a)));
    }
    sum += qu.w * (1.0 - qu.x) * inner;
  }
  return sum * jac;
}

/// Bivariate polynomial sum_{p+q<=4} c_pq x^p y^q.
class Polynomial2 {
 public:
  static constexpr int kMaxDegree = 4;

  Polynomial2() { coeffs_.fill(0.0); }
  static Polynomial2 constant(double c);

  double& coeff(int p, int q) { return coeffs_[slot(p, q)]; }
  double coeff(int p, int q) const { return coeffs_[slot(p, q)]; }
  double operator()(const Vec2& x) const;

 private:
  static int slot(int p, int q);
  std::array<double, (kMaxDegree + 1) * (kMaxDegree + 2) / 2> coeffs_;
};

}  // namespace hcife
