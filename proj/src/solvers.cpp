#include "iflux/solvers.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SPQRSupport>
#include <Eigen/SparseCholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "iflux/error.hpp"

namespace iflux {

namespace {

using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

void check_rhs(const SparseMatrix& a, const Vector& b) {
  if (b.size() != a.n_rows()) {
    std::ostringstream msg;
    msg << "right-hand side has length " << b.size() << " but matrix has " << a.n_rows() << " rows";
    throw DimensionError(msg.str());
  }
}

[[noreturn]] void throw_rank_deficient(const char* method, long rank, long n_cols, double ratio) {
  std::ostringstream msg;
  msg << method << ": matrix is rank deficient (numerical rank " << rank << " of " << n_cols
      << " columns, deficiency " << (n_cols - rank) << ", smallest/largest pivot " << ratio << ")";
  throw RankDeficientError(msg.str(), rank, n_cols);
}

Vector solve_svd(const SparseMatrix& a, const Vector& b) {
  if (a.n_cols() > kSvdMaxCols) {
    std::ostringstream msg;
    msg << "dense SVD is limited to " << kSvdMaxCols << " columns, got " << a.n_cols();
    throw ParameterError(msg.str());
  }
  const Eigen::MatrixXd dense = a.to_dense();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double smin = s.size() > 0 ? s(s.size() - 1) : 0.0;
  if (smax == 0.0 || smin < kRankTolerance * smax) {
    long rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s(k) >= kRankTolerance * smax && smax > 0.0) ++rank;
    }
    throw_rank_deficient("svd", rank, a.n_cols(), smax > 0.0 ? smin / smax : 0.0);
  }
  return svd.solve(b);
}

Vector solve_spqr(const SparseMatrix& a, const Vector& b) {
  using SpqrMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, SuiteSparse_long>;
  SpqrMatrix m = a.eigen().cast<double>();
  m.makeCompressed();
  Eigen::SPQR<SpqrMatrix> qr;
  // Only exactly null columns are dropped by the factorization itself; the
  // relative test below is what decides rank.
  qr.setPivotThreshold(0.0);
  qr.compute(m);
  if (qr.info() != Eigen::Success) throw SolverError("sparse QR factorization failed");
  const long n = a.n_cols();
  const long rank = qr.rank();
  const SpqrMatrix r = qr.matrixR();
  double dmax = 0.0;
  double dmin = n > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  for (long k = 0; k < std::min<long>(rank, n); ++k) {
    const double d = std::abs(r.coeff(k, k));
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  if (rank < n || dmax == 0.0 || dmin < kRankTolerance * dmax) {
    long numeric_rank = 0;
    for (long k = 0; k < std::min<long>(rank, n); ++k) {
      if (std::abs(r.coeff(k, k)) >= kRankTolerance * dmax && dmax > 0.0) ++numeric_rank;
    }
    throw_rank_deficient("sparse-qr", numeric_rank, n, dmax > 0.0 && rank == n ? dmin / dmax : 0.0);
  }
  Vector x = qr.solve(b);
  if (qr.info() != Eigen::Success) throw SolverError("sparse QR solve failed");
  return x;
}

Vector solve_normal_cg(const SparseMatrix& a, const Vector& b) {
  const ColMatrix m = a.eigen();
  Eigen::VectorXd col_norms = Eigen::VectorXd::Zero(m.cols());
  for (Eigen::Index j = 0; j < m.outerSize(); ++j) col_norms(j) = m.col(j).norm();
  const double cmax = col_norms.size() > 0 ? col_norms.maxCoeff() : 0.0;
  long nonzero_cols = 0;
  for (Eigen::Index j = 0; j < col_norms.size(); ++j) {
    if (col_norms(j) > kRankTolerance * cmax) ++nonzero_cols;
  }
  if (cmax == 0.0 || nonzero_cols < m.cols()) {
    throw_rank_deficient("normal-cg", nonzero_cols, m.cols(), 0.0);
  }
  Eigen::LeastSquaresConjugateGradient<ColMatrix> cg;
  cg.setTolerance(1e-14);
  cg.setMaxIterations(std::max<Eigen::Index>(1000, 20 * m.cols()));
  cg.compute(m);
  Vector x = cg.solve(b);
  if (cg.info() != Eigen::Success) {
    // CG reports NoConvergence even when it stalls at roundoff; accept the
    // iterate if the normal-equation residual meets the library contract.
    const Vector atb = m.transpose() * b;
    const Vector g = m.transpose() * (m * x - b);
    if (!(g.norm() <= 1e-8 * atb.norm())) {
      std::ostringstream msg;
      msg << "normal-cg did not converge after " << cg.iterations() << " iterations (estimated error "
          << cg.error() << ")";
      throw SolverError(msg.str());
    }
  }
  return x;
}

}  // namespace

Vector solve_spd(const SparseMatrix& a, const Vector& b) {
  if (a.n_rows() != a.n_cols()) throw DimensionError("solve_spd requires a square matrix");
  check_rhs(a, b);
  const ColMatrix m = a.eigen();
  const ColMatrix asym = m - ColMatrix(m.transpose());
  if (asym.norm() > 1e-12 * m.norm()) throw NotSpdError("solve_spd: matrix is not symmetric");
  Eigen::SimplicialLLT<ColMatrix> llt(m);
  if (llt.info() != Eigen::Success) throw NotSpdError("solve_spd: Cholesky met a non-positive pivot");
  return llt.solve(b);
}

LsqMethod parse_lsq_method(std::string_view name) {
  if (name == "svd") return LsqMethod::Svd;
  if (name == "sparse-qr") return LsqMethod::SparseQr;
  if (name == "normal-cg") return LsqMethod::NormalCg;
  throw ParameterError("unknown least-squares method '" + std::string(name) +
                       "' (expected svd, sparse-qr or normal-cg)");
}

std::string to_string(LsqMethod method) {
  switch (method) {
    case LsqMethod::Svd:
      return "svd";
    case LsqMethod::SparseQr:
      return "sparse-qr";
    case LsqMethod::NormalCg:
      return "normal-cg";
  }
  return "unknown";
}

Vector solve_least_squares(const SparseMatrix& a, const Vector& b, LsqMethod method) {
  check_rhs(a, b);
  if (a.n_rows() < a.n_cols()) throw DimensionError("least squares requires n_rows >= n_cols");
  switch (method) {
    case LsqMethod::Svd:
      return solve_svd(a, b);
    case LsqMethod::SparseQr:
      return solve_spqr(a, b);
    case LsqMethod::NormalCg:
      return solve_normal_cg(a, b);
  }
  throw ParameterError("unknown least-squares method");
}

}  // namespace iflux
