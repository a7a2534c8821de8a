#include "gcy/clifford.hpp"

namespace gcy {

MatC IsotropicSubspace::matrix(int dim) const {
  MatC m(2 * dim, dimension());
  for (int k = 0; k < dimension(); ++k) m.col(k) = basis[static_cast<std::size_t>(k)].stacked();
  return m;
}

MatC annihilator_system(const Form& phi) {
  const int n = phi.dim();
  MatC c(phi.size(), 2 * n);
  for (int g = 0; g < 2 * n; ++g) {
    VecC e = VecC::Zero(2 * n);
    e(g) = 1.0;
    const Form col = clifford_act(VecCovec::from_stacked(e), phi);
    for (Mask s = 0; s < phi.size(); ++s) c(s, g) = col[s];
  }
  return c;
}

IsotropicSubspace annihilator(const Form& phi) {
  if (phi.is_zero()) throw DomainError("annihilator: zero spinor");
  const MatC ns = null_space(annihilator_system(phi));
  IsotropicSubspace out;
  for (Eigen::Index k = 0; k < ns.cols(); ++k)
    out.basis.push_back(VecCovec::from_stacked(ns.col(k)));
  return out;
}

bool is_pure(const Form& phi) {
  if (phi.is_zero()) throw DomainError("is_pure: zero spinor");
  if (!phi.parity()) throw DomainError("is_pure: spinor must have homogeneous parity");
  return annihilator(phi).dimension() == phi.dim();
}

PairingIntersection pairing_intersection_check(const Form& phi, const Form& psi) {
  require_same_dim(phi.dim(), psi.dim(), "pairing_intersection_check");
  if (!is_pure(phi) || !is_pure(psi)) throw DomainError("pairing_intersection_check: non-pure input");
  const int n = phi.dim();
  const MatC e1 = annihilator(phi).matrix(n);
  const MatC e2 = annihilator(psi).matrix(n);
  MatC both(2 * n, e1.cols() + e2.cols());
  both << e1, e2;
  const int inter = static_cast<int>(both.cols()) - numeric_rank(both);
  const cplx p = mukai_pairing_unchecked(phi, psi);
  const bool zero = std::abs(p) <= kRankTol * phi.norm() * psi.norm();
  return {zero, inter > 0, p, inter};
}

}  // namespace gcy
