#include "hcife/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hcife/common.hpp"

namespace hcife {

CsrMatrix CsrMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  if (rows < 0 || cols < 0) throw ParameterError("negative matrix dimension");
  for (const auto& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) throw ParameterError("triplet index out of range");

  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

  CsrMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_.assign(rows + 1, 0);
  for (std::size_t k = 0; k < triplets.size();) {
    const int r = triplets[k].row;
    const int c = triplets[k].col;
    double v = 0.0;
    for (; k < triplets.size() && triplets[k].row == r && triplets[k].col == c; ++k) v += triplets[k].value;
    m.col_idx_.push_back(c);
    m.values_.push_back(v);
    ++m.row_ptr_[r + 1];
  }
  for (int i = 0; i < rows; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  return m;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[col_idx_[k]];
    y[i] = s;
  }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) d[i] = at(i, i);
  return d;
}

double CsrMatrix::at(int i, int j) const {
  const auto first = col_idx_.begin() + row_ptr_[i];
  const auto last = col_idx_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(first, last, j);
  return (it != last && *it == j) ? values_[it - col_idx_.begin()] : 0.0;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double CsrMatrix::max_asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) m = std::max(m, std::abs(values_[k] - at(col_idx_[k], i)));
  return m;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d(i, col_idx_[k]) = values_[k];
  return d;
}

void CsrMatrix::write_matrix_market(std::ostream& os) const {
  int lower = 0;
  for (int i = 0; i < rows_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) lower += col_idx_[k] <= i;
  os << "%%MatrixMarket matrix coordinate real symmetric\n";
  os << rows_ << ' ' << cols_ << ' ' << lower << '\n';
  const auto old = os.precision(17);
  for (int i = 0; i < rows_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      if (col_idx_[k] <= i) os << i + 1 << ' ' << col_idx_[k] + 1 << ' ' << values_[k] << '\n';
  os.precision(old);
}

namespace {

double dot_range(const double* a, const double* b, std::size_t n) {
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }
  const std::size_t half = n / 2;
  return dot_range(a, b, half) + dot_range(a + half, b + half, n - half);
}

}  // namespace

double pairwise_dot(std::span<const double> a, std::span<const double> b) {
  return dot_range(a.data(), b.data(), std::min(a.size(), b.size()));
}

}  // namespace hcife
