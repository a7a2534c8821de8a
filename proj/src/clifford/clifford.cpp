#include <unsupported/Eigen/MatrixFunctions>

#include "gcy/clifford.hpp"

namespace gcy {

VecCovec::VecCovec(Vector v_, Covector xi_) : v(std::move(v_)), xi(std::move(xi_)) {
  require_same_dim(v.dim(), xi.dim(), "VecCovec");
}

VecC VecCovec::stacked() const {
  const int n = dim();
  VecC x(2 * n);
  for (int i = 0; i < n; ++i) {
    x(i) = v[i];
    x(n + i) = xi[i];
  }
  return x;
}

VecCovec VecCovec::from_stacked(const VecC& x) {
  const int n = static_cast<int>(x.size() / 2);
  VecCovec out(n);
  for (int i = 0; i < n; ++i) {
    out.v[i] = x(i);
    out.xi[i] = x(n + i);
  }
  return out;
}

cplx pairing(const VecCovec& x, const VecCovec& y) {
  require_same_dim(x.dim(), y.dim(), "pairing");
  cplx a{}, b{};
  for (int i = 0; i < x.dim(); ++i) {
    a += x.v[i] * y.xi[i];
    b += y.v[i] * x.xi[i];
  }
  return -(a + b) / 2.0;
}

MatC pairing_gram(int dim) {
  MatC g = MatC::Zero(2 * dim, 2 * dim);
  for (int i = 0; i < dim; ++i) {
    g(i, dim + i) = -0.5;
    g(dim + i, i) = -0.5;
  }
  return g;
}

Form clifford_act(const VecCovec& x, const Form& a) {
  require_same_dim(x.dim(), a.dim(), "clifford_act");
  return contract(x.v, a) + wedge(Form::from_covector(x.xi), a);
}

namespace {

// (x.dx^S) as a dense column.
void add_clifford_on_basis(const VecC& x, int n, Mask s, cplx scale, VecC& out) {
  for (int i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    if (s & bit) {
      if (x(i) != cplx{}) out(s & ~bit) += scale * static_cast<double>(contract_sign(i, s)) * x(i);
    } else if (x(n + i) != cplx{}) {
      out(s | bit) += scale * static_cast<double>(wedge_sign(bit, s)) * x(n + i);
    }
  }
}

}  // namespace

MatC clifford_matrix(const VecCovec& x) {
  const int n = x.dim();
  const Mask size = Mask{1} << n;
  const VecC xs = x.stacked();
  MatC m = MatC::Zero(size, size);
  for (Mask s = 0; s < size; ++s) {
    VecC col = VecC::Zero(size);
    add_clifford_on_basis(xs, n, s, 1.0, col);
    m.col(s) = col;
  }
  return m;
}

SoElement::SoElement(int dim)
    : endo(MatC::Zero(dim, dim)), two_form(dim), bivector(MatC::Zero(dim, dim)) {}

SoElement::SoElement(MatC endo_, Form two_form_, MatC bivector_)
    : endo(std::move(endo_)), two_form(std::move(two_form_)), bivector(std::move(bivector_)) {
  const int n = static_cast<int>(endo.rows());
  if (endo.cols() != n || bivector.rows() != n || bivector.cols() != n)
    throw DimensionError("SoElement: blocks must be n x n");
  require_same_dim(n, two_form.dim(), "SoElement");
  if (!two_form.is_zero() && two_form.degree() != 2)
    throw DomainError("SoElement: B component must be a 2-form");
  if ((bivector + bivector.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("SoElement: bivector must be antisymmetric");
}

MatC two_form_matrix(const Form& b) {
  const int n = b.dim();
  MatC m = MatC::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cplx c = b[(Mask{1} << i) | (Mask{1} << j)];
      m(i, j) = c;
      m(j, i) = -c;
    }
  return m;
}

Form two_form_from_matrix(const MatC& m) {
  const int n = static_cast<int>(m.rows());
  Form b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b[(Mask{1} << i) | (Mask{1} << j)] = m(i, j);
  return b;
}

MatC SoElement::matrix() const {
  const int n = dim();
  MatC m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = -endo;
  m.topRightCorner(n, n) = -bivector;
  m.bottomLeftCorner(n, n) = two_form_matrix(two_form);
  m.bottomRightCorner(n, n) = endo.transpose();
  return m;
}

SoElement SoElement::from_matrix(const MatC& m) {
  const int n = static_cast<int>(m.rows() / 2);
  if (m.rows() != 2 * n || m.cols() != 2 * n) throw DimensionError("so matrix must be 2n x 2n");
  MatC a = -m.topLeftCorner(n, n);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m.bottomRightCorner(n, n) - a.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw DomainError("matrix is not in so(V+V*)");
  MatC bmat = m.bottomLeftCorner(n, n);
  MatC beta = -m.topRightCorner(n, n);
  if ((bmat + bmat.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale ||
      (beta + beta.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw DomainError("matrix is not in so(V+V*)");
  MatC beta_anti = (beta - beta.transpose()) / 2.0;
  return SoElement(a, two_form_from_matrix((bmat - bmat.transpose()) / 2.0), beta_anti);
}

SoElement& SoElement::operator+=(const SoElement& o) {
  endo += o.endo;
  two_form += o.two_form;
  bivector += o.bivector;
  return *this;
}

SoElement& SoElement::operator*=(cplx s) {
  endo *= s;
  two_form *= s;
  bivector *= s;
  return *this;
}

MatC spin_matrix(const SoElement& a) {
  const int n = a.dim();
  const Mask size = Mask{1} << n;
  const MatC m = a.matrix();
  MatC sig = MatC::Zero(size, size);

  // sigma(1): iota(e_i) sigma(1) = -(a.e_i).1, which fixes the degree-2 part.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sig((Mask{1} << i) | (Mask{1} << j), 0) = -m(n + j, i);

  // sigma(dx^i ^ psi) = dx^i ^ sigma(psi) + (a.dx^i).psi, peeling the lowest index.
  for (Mask s = 1; s < size; ++s) {
    const int i = std::countr_zero(s);
    const Mask bit = Mask{1} << i;
    const Mask rest = s & ~bit;
    VecC col = VecC::Zero(size);
    for (Mask t = 0; t < size; ++t) {
      const cplx c = sig(t, rest);
      if (c == cplx{} || (t & bit)) continue;
      col(t | bit) += static_cast<double>(wedge_sign(bit, t)) * c;
    }
    add_clifford_on_basis(m.col(n + i), n, rest, 1.0, col);
    sig.col(s) = col;
  }
  const cplx shift = sig.trace() / static_cast<double>(size);
  sig.diagonal().array() -= shift;
  return sig;
}

namespace {

VecC to_vec(const Form& f) { return Eigen::Map<const VecC>(f.coeffs().data(), f.size()); }

Form from_vec(int dim, const VecC& v) {
  Form f(dim);
  for (Mask s = 0; s < f.size(); ++s) f[s] = v(s);
  return f;
}

}  // namespace

Form spin_lie_action(const SoElement& a, const Form& phi) {
  require_same_dim(a.dim(), phi.dim(), "spin_lie_action");
  return from_vec(phi.dim(), spin_matrix(a) * to_vec(phi));
}

Form exp_bfield(const Form& b, const Form& phi) {
  require_same_dim(b.dim(), phi.dim(), "exp_bfield");
  if (!b.is_zero() && b.degree() != 2) throw DomainError("exp_bfield: B must be a 2-form");
  return wedge_exp(b, phi);
}

MatC exp_so_matrix(const SoElement& a) {
  MatC m = a.matrix();
  return m.exp();
}

MatC exp_spin_matrix(const SoElement& a) {
  MatC s = spin_matrix(a);
  return s.exp();
}

Form exp_so(const SoElement& a, const Form& phi) {
  require_same_dim(a.dim(), phi.dim(), "exp_so");
  return from_vec(phi.dim(), exp_spin_matrix(a) * to_vec(phi));
}

}  // namespace gcy
