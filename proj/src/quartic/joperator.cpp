#include <Eigen/Eigenvalues>

#include "gcy/quartic.hpp"

namespace gcy {

namespace {

VecR restrict_real(const Form& f, const std::vector<Mask>& ch) {
  VecR v(static_cast<Eigen::Index>(ch.size()));
  for (std::size_t k = 0; k < ch.size(); ++k) v(static_cast<Eigen::Index>(k)) = f[ch[k]].real();
  return v;
}

Form expand(const VecC& v, const std::vector<Mask>& ch) {
  Form f(6);
  for (std::size_t k = 0; k < ch.size(); ++k) f[ch[k]] = v(static_cast<Eigen::Index>(k));
  return f;
}

// Matrix of <x, y> = x^T P y on a parity block.
MatR mukai_block(const std::vector<Mask>& ch) {
  const auto n = static_cast<Eigen::Index>(ch.size());
  MatR p = MatR::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      const Mask s = ch[static_cast<std::size_t>(r)];
      if (ch[static_cast<std::size_t>(c)] == (63u & ~s))
        p(r, c) = sigma_sign(popcount(s)) * wedge_sign(s, 63u & ~s);
    }
  return p;
}

Parity parity_of_stable(const Form& rho) {
  auto p = rho.parity();
  if (!p) throw DomainError("J: rho must have homogeneous parity");
  return *p;
}

}  // namespace

Form JOperator::apply(const Form& x) const {
  VecC v(static_cast<Eigen::Index>(channels.size()));
  for (std::size_t k = 0; k < channels.size(); ++k) v(static_cast<Eigen::Index>(k)) = x[channels[k]];
  return expand(matrix.cast<cplx>() * v, channels);
}

JOperator j_operator(const Form& rho) {
  require_dim6(rho, "j_operator");
  const Parity par = parity_of_stable(rho);
  const Form hat = rho_hat(rho);
  const std::vector<Mask> ch = parity_masks(6, par);
  const SpinBasis& sb = SpinBasis::get();
  const auto m = static_cast<Eigen::Index>(ch.size());

  const VecR r = restrict_real(rho, ch);
  const VecR h = restrict_real(hat, ch);
  // Full-space sigma matrices restricted to the parity block.
  MatR t(m, SpinBasis::kSize + 1), y(m, SpinBasis::kSize + 1);
  VecR rf = VecR::Zero(64), hf = VecR::Zero(64);
  for (Mask s = 0; s < 64; ++s) {
    rf(s) = rho[s].real();
    hf(s) = hat[s].real();
  }
  for (int i = 0; i < SpinBasis::kSize; ++i) {
    const VecR sr = sb.spin(i) * rf;
    const VecR sh = sb.spin(i) * hf;
    for (Eigen::Index k = 0; k < m; ++k) {
      t(k, i) = sr(ch[static_cast<std::size_t>(k)]);
      y(k, i) = sh(ch[static_cast<std::size_t>(k)]);
    }
  }
  t.col(SpinBasis::kSize) = r;
  y.col(SpinBasis::kSize) = h;

  // J T = Y in the least-squares sense: T^T J^T = Y^T.
  Eigen::CompleteOrthogonalDecomposition<MatR> cod(t.transpose());
  MatR jt = cod.solve(y.transpose());
  return {par, ch, jt.transpose()};
}

JStarCheck jstar_check(const Form& rho) {
  const JOperator j = j_operator(rho);
  const auto m = static_cast<Eigen::Index>(j.channels.size());
  MatR star = MatR::Zero(m, m), sig = MatR::Zero(m, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const Mask s = j.channels[static_cast<std::size_t>(c)];
    const Mask t = 63u & ~s;
    sig(c, c) = sigma_sign(popcount(s));
    for (Eigen::Index r = 0; r < m; ++r)
      if (j.channels[static_cast<std::size_t>(r)] == t) star(r, c) = wedge_sign(s, t);
  }
  const MatR k = star * sig * j.matrix * sig * star;
  const MatR adj = j.matrix.transpose();
  const double plus = (adj - k).cwiseAbs().maxCoeff();
  const double minus = (adj + k).cwiseAbs().maxCoeff();
  return plus <= minus ? JStarCheck{plus, 1} : JStarCheck{minus, -1};
}

Signature hermitian_signature(const Form& rho) {
  const JOperator j = j_operator(rho);
  const auto m = static_cast<Eigen::Index>(j.channels.size());
  const MatC jc = j.matrix.cast<cplx>();
  const MatC proj = (MatC::Identity(m, m) + cplx(0, 1) * jc) * 0.5;
  const MatC basis = column_space(proj);
  const MatC p = mukai_block(j.channels).cast<cplx>();
  MatC h = cplx(0, -1) * (basis.transpose() * p * basis.conjugate());
  h = (h + h.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<MatC> es(h);
  const VecR ev = es.eigenvalues();
  const double tol = kRankTol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  Signature sgn;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > tol) ++sgn.positive;
    else if (ev(k) < -tol) ++sgn.negative;
  }
  return sgn;
}

}  // namespace gcy
