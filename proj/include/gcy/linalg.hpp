#pragma once

#include <Eigen/Dense>

namespace gcy {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;

constexpr double kRankTol = 1e-9;

// Numerical rank: singular values above rel_tol * largest.
int numeric_rank(const MatC& m, double rel_tol = kRankTol);

// Orthonormal basis (columns) of the null space, same threshold as numeric_rank.
MatC null_space(const MatC& m, double rel_tol = kRankTol);

// Orthonormal basis (columns) of the column space.
MatC column_space(const MatC& m, double rel_tol = kRankTol);

}  // namespace gcy
