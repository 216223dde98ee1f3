#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

namespace iflux {

using Vector = Eigen::VectorXd;
using EigenSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Finalized compressed-row matrix. Duplicate triplets are summed and exact
// zeros are dropped, so iteration sees strictly increasing columns per row
// and no explicit zeros.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(long n_rows, long n_cols, const std::vector<Eigen::Triplet<double>>& entries);
  explicit SparseMatrix(EigenSparse m);

  long n_rows() const { return m_.rows(); }
  long n_cols() const { return m_.cols(); }
  long nnz() const { return m_.nonZeros(); }
  const EigenSparse& eigen() const { return m_; }

  double coeff(long i, long j) const { return m_.coeff(i, j); }
  Vector multiply(const Vector& x) const;
  Eigen::MatrixXd to_dense() const { return Eigen::MatrixXd(m_); }
  double frobenius_norm() const { return m_.norm(); }

 private:
  EigenSparse m_;
};

// Accumulates (row, col, value) contributions during assembly.
class TripletBuilder {
 public:
  TripletBuilder(long n_rows, long n_cols) : n_rows_(n_rows), n_cols_(n_cols) {}
  void add(long row, long col, double value);
  long n_rows() const { return n_rows_; }
  long n_cols() const { return n_cols_; }
  const std::vector<Eigen::Triplet<double>>& entries() const { return entries_; }
  SparseMatrix finalize() const { return SparseMatrix(n_rows_, n_cols_, entries_); }

 private:
  long n_rows_;
  long n_cols_;
  std::vector<Eigen::Triplet<double>> entries_;
};

}  // namespace iflux
