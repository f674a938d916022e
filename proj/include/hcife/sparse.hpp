#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace hcife {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed sparse row matrix. Column indices are sorted within each row.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Duplicates are summed in insertion order, so equal input sequences give
  /// bitwise equal matrices.
  static CsrMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  std::span<const int> row_offsets() const { return row_ptr_; }
  std::span<const int> column_indices() const { return col_idx_; }
  std::span<const double> values() const { return values_; }

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  std::vector<double> diagonal() const;
  double at(int i, int j) const;
  double max_abs() const;
  /// max |a_ij - a_ji| over the stored pattern and its transpose.
  double max_asymmetry() const;

  Eigen::MatrixXd to_dense() const;

  /// Lower triangle in MatrixMarket coordinate format, 1-based.
  void write_matrix_market(std::ostream& os) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// Pairwise summation of a[i]*b[i]; the result does not depend on anything but
/// the input order.
double pairwise_dot(std::span<const double> a, std::span<const double> b);

}  // namespace hcife
