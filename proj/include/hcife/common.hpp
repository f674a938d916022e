#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hcife {

using Vec2 = Eigen::Vector2d;

/// Subdomain label. Omega^- is the closure side for points exactly on the
/// interface.
enum class Side : std::uint8_t { Minus = 0, Plus = 1 };

inline constexpr int index(Side s) { return static_cast<int>(s); }
inline constexpr Side other(Side s) { return s == Side::Minus ? Side::Plus : Side::Minus; }
inline constexpr std::array<Side, 2> both_sides{Side::Minus, Side::Plus};

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// 90 degree clockwise rotation.
inline Vec2 rotate_cw(const Vec2& v) { return {v.y(), -v.x()}; }

/// Piecewise-constant diffusion coefficient rho^-/rho^+.
struct Diffusion {
  double minus = 1.0;
  double plus = 1.0;

  double operator()(Side s) const { return s == Side::Minus ? minus : plus; }
};

// ---------------------------------------------------------------------------
// Errors. Everything thrown by the library derives from Error.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Interface/mesh configuration outside the admissible geometry.
class GeometryError : public Error {
 public:
  GeometryError(int cell, const std::string& what)
      : Error("cell " + std::to_string(cell) + ": " + what), cell_(cell) {}
  int cell() const { return cell_; }

 private:
  int cell_;
};

/// Local coupled basis could not be built (singular or ill-conditioned system).
class BasisError : public Error {
 public:
  BasisError(int cell, const std::string& what)
      : Error("cell " + std::to_string(cell) + ": " + what), cell_(cell) {}
  int cell() const { return cell_; }

 private:
  int cell_;
};

class SolverError : public Error {
 public:
  enum class Kind { NonConvergence, Indefinite };

  SolverError(Kind kind, const std::string& what, std::vector<double> residual_tail)
      : Error(what), kind_(kind), tail_(std::move(residual_tail)) {}
  Kind kind() const { return kind_; }
  const std::vector<double>& residual_tail() const { return tail_; }

 private:
  Kind kind_;
  std::vector<double> tail_;
};

}  // namespace hcife
