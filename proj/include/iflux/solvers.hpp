#pragma once

#include <string>
#include <string_view>

#include "iflux/sparse.hpp"

namespace iflux {

// Cholesky solve for symmetric positive definite systems.
Vector solve_spd(const SparseMatrix& a, const Vector& b);

enum class LsqMethod { Svd, SparseQr, NormalCg };

LsqMethod parse_lsq_method(std::string_view name);
std::string to_string(LsqMethod method);

// Dense SVD is a cross-check path only and refuses wider systems.
inline constexpr long kSvdMaxCols = 2000;
inline constexpr double kRankTolerance = 1e-12;

// Minimizes |Ax - b|_2 for a tall matrix with full column rank. Rank loss is
// detected and reported as RankDeficientError.
Vector solve_least_squares(const SparseMatrix& a, const Vector& b, LsqMethod method);

}  // namespace iflux
