#include "hcife/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace hcife {

namespace {

std::vector<QuadPoint1D> compute_gauss_legendre(int n) {
  std::vector<QuadPoint1D> rule(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[n - 1 - i] = {0.5 * (x + 1.0), 0.5 * w};
  }
  return rule;
}

}  // namespace

std::span<const QuadPoint1D> gauss_legendre(int n) {
  if (n < 1 || n > 64) throw ParameterError("Gauss-Legendre order out of range: " + std::to_string(n));
  static std::mutex mutex;
  static std::map<int, std::vector<QuadPoint1D>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

std::vector<QuadPoint2D> triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int n) {
  const auto rule = gauss_legendre(n);
  const double jac = std::abs(cross(b - a, c - a));
  std::vector<QuadPoint2D> out;
  out.reserve(rule.size() * rule.size());
  for (const auto& qu : rule) {
    for (const auto& qv : rule) {
      const double s = qu.x;
      const double t = qv.x * (1.0 - qu.x);
      out.push_back({a + s * (b - a) + t * (c - a), qu.w * qv.w * (1.0 - qu.x) * jac});
    }
  }
  return out;
}

Polynomial2 Polynomial2::constant(double c) {
  Polynomial2 p;
  p.coeff(0, 0) = c;
  return p;
}

int Polynomial2::slot(int p, int q) {
  if (p < 0 || q < 0 || p + q > kMaxDegree) throw ParameterError("polynomial degree above 4");
  const int d = p + q;
  return d * (d + 1) / 2 + q;
}

double Polynomial2::operator()(const Vec2& x) const {
  double sum = 0.0;
  double xp = 1.0;
  for (int p = 0; p <= kMaxDegree; ++p) {
    double yq = 1.0;
    for (int q = 0; p + q <= kMaxDegree; ++q) {
      sum += coeffs_[slot(p, q)] * xp * yq;
      yq *= x.y();
    }
    xp *= x.x();
  }
  return sum;
}

}  // namespace hcife
