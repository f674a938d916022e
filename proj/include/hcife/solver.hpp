#pragma once

#include <span>
#include <vector>

#include "hcife/sparse.hpp"

namespace hcife {

struct SolverOptions {
  double tol = 1e-12;  // relative preconditioned residual
  int max_iter = 0;    // 0: 10 * n + 100
  bool jacobi = true;
};

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  double seconds = 0.0;
};

struct SolveResult {
  std::vector<double> x;
  SolveReport report;
};

/// Conjugate gradients, Jacobi-preconditioned unless disabled. Stops when
/// sqrt(r'M^-1 r) <= tol sqrt(b'M^-1 b). Throws SolverError on breakdown
/// (p'Ap <= 0) or when max_iter is reached.
SolveResult solve(const CsrMatrix& a, std::span<const double> b, const SolverOptions& options = {});

}  // namespace hcife
