#include "hcife/solver.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <sstream>

#include "hcife/common.hpp"

namespace hcife {

SolveResult solve(const CsrMatrix& a, std::span<const double> b, const SolverOptions& options) {
  if (a.rows() != a.cols()) throw ParameterError("matrix is not square");
  if (static_cast<int>(b.size()) != a.rows()) throw ParameterError("right-hand side has the wrong length");
  if (!(options.tol > 0.0 && options.tol < 1.0)) throw ParameterError("solver tolerance must lie in (0,1)");

  const auto start = std::chrono::steady_clock::now();
  const int n = a.rows();
  const int max_iter = options.max_iter > 0 ? options.max_iter : 10 * n + 100;

  std::vector<double> inv_diag(n, 1.0);
  if (options.jacobi) {
    const auto d = a.diagonal();
    for (int i = 0; i < n; ++i) {
      if (!(d[i] > 0.0)) {
        std::ostringstream os;
        os << "non-positive diagonal entry " << d[i] << " in row " << i;
        throw SolverError(SolverError::Kind::Indefinite, os.str(), {});
      }
      inv_diag[i] = 1.0 / d[i];
    }
  }

  SolveResult res;
  res.x.assign(n, 0.0);
  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z(n), p(n), ap(n);
  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  double rz = pairwise_dot(r, z);
  const double bnorm = std::sqrt(rz);

  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  if (bnorm == 0.0) {
    res.report.seconds = elapsed();
    return res;
  }

  std::deque<double> tail;
  p = z;
  double rel = 1.0;
  int it = 0;
  while (rel > options.tol) {
    if (it == max_iter) {
      std::ostringstream os;
      os << "CG did not reach relative residual " << options.tol << " in " << max_iter << " iterations (last " << rel
         << ")";
      throw SolverError(SolverError::Kind::NonConvergence, os.str(), {tail.begin(), tail.end()});
    }
    a.multiply(p, ap);
    const double pap = pairwise_dot(p, ap);
    if (!(pap > 0.0)) {
      std::ostringstream os;
      os << "CG breakdown at iteration " << it << ": p'Ap = " << pap << " (matrix not positive definite)";
      throw SolverError(SolverError::Kind::Indefinite, os.str(), {tail.begin(), tail.end()});
    }
    const double alpha = rz / pap;
    for (int i = 0; i < n; ++i) {
      res.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
      z[i] = inv_diag[i] * r[i];
    }
    const double rz_new = pairwise_dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    ++it;
    rel = std::sqrt(std::max(rz, 0.0)) / bnorm;
    tail.push_back(rel);
    if (tail.size() > 10) tail.pop_front();
  }
  res.report.iterations = it;
  res.report.relative_residual = rel;
  res.report.seconds = elapsed();
  return res;
}

}  // namespace hcife
