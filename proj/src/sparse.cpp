#include "iflux/sparse.hpp"

#include <utility>

#include "iflux/error.hpp"

namespace iflux {

namespace {

void drop_exact_zeros(EigenSparse& m) {
  m.prune([](const Eigen::Index&, const Eigen::Index&, const double& v) { return v != 0.0; });
  m.makeCompressed();
}

}  // namespace

SparseMatrix::SparseMatrix(long n_rows, long n_cols, const std::vector<Eigen::Triplet<double>>& entries)
    : m_(n_rows, n_cols) {
  if (n_rows < 0 || n_cols < 0) throw DimensionError("negative matrix dimension");
  for (const auto& t : entries) {
    if (t.row() < 0 || t.row() >= n_rows || t.col() < 0 || t.col() >= n_cols) {
      throw DimensionError("triplet index outside matrix bounds");
    }
  }
  m_.setFromTriplets(entries.begin(), entries.end());
  drop_exact_zeros(m_);
}

SparseMatrix::SparseMatrix(EigenSparse m) : m_(std::move(m)) { drop_exact_zeros(m_); }

Vector SparseMatrix::multiply(const Vector& x) const {
  if (x.size() != m_.cols()) throw DimensionError("vector length does not match matrix columns");
  return m_ * x;
}

void TripletBuilder::add(long row, long col, double value) {
  if (row < 0 || row >= n_rows_ || col < 0 || col >= n_cols_) {
    throw DimensionError("triplet index outside matrix bounds");
  }
  entries_.emplace_back(row, col, value);
}

}  // namespace iflux
