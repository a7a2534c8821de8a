#include "gcy/linalg.hpp"

#include <Eigen/SVD>

namespace gcy {

namespace {

int rank_from(const Eigen::VectorXd& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

}  // namespace

int numeric_rank(const MatC& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatC> svd(m);
  return rank_from(svd.singularValues(), rel_tol);
}

MatC null_space(const MatC& m, double rel_tol) {
  if (m.rows() == 0) return MatC::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeFullV);
  const int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(m.cols() - r);
}

MatC column_space(const MatC& m, double rel_tol) {
  if (m.cols() == 0) return MatC(m.rows(), 0);
  Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeThinU);
  const int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

}  // namespace gcy
