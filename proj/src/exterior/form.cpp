#include <algorithm>
#include <cmath>
#include <string>

#include "gcy/exterior.hpp"

namespace gcy {

std::vector<Mask> parity_masks(int dim, Parity p) {
  std::vector<Mask> out;
  out.reserve(std::size_t{1} << (dim - 1));
  for (Mask s = 0; s < (Mask{1} << dim); ++s)
    if (mask_parity(s) == p) out.push_back(s);
  return out;
}

Vector Vector::basis(int dim, int i) {
  Vector v(dim);
  v[i] = 1.0;
  return v;
}

Covector Covector::basis(int dim, int i) {
  Covector v(dim);
  v[i] = 1.0;
  return v;
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
}

Form::Form(int dim) : dim_(dim) {
  if (dim < kMinDim || dim > kMaxDim)
    throw DimensionError("form dimension must lie in 2..8, got " + std::to_string(dim));
  c_.assign(std::size_t{1} << dim, cplx{});
}

Form::Form(int dim, std::vector<cplx> coeffs) : Form(dim) {
  if (coeffs.size() != c_.size())
    throw DimensionError("form needs 2^dim coefficients");
  c_ = std::move(coeffs);
}

Form Form::scalar(int dim, cplx c) {
  Form f(dim);
  f[0] = c;
  return f;
}

Form Form::basis(int dim, Mask s, cplx c) {
  Form f(dim);
  if (s >= f.size()) throw DomainError("basis subset out of range");
  f[s] = c;
  return f;
}

Form Form::from_covector(const Covector& xi) {
  Form f(xi.dim());
  for (int i = 0; i < xi.dim(); ++i) f[Mask{1} << i] = xi[i];
  return f;
}

Form Form::volume(int dim) {
  Form f(dim);
  f[f.top_mask()] = 1.0;
  return f;
}

Form Form::grade(int k) const {
  Form out(dim_);
  for (Mask s = 0; s < c_.size(); ++s)
    if (popcount(s) == k) out.c_[s] = c_[s];
  return out;
}

Form Form::parity_part(Parity p) const {
  Form out(dim_);
  for (Mask s = 0; s < c_.size(); ++s)
    if (mask_parity(s) == p) out.c_[s] = c_[s];
  return out;
}

std::optional<int> Form::degree() const {
  std::optional<int> d;
  for (Mask s = 0; s < c_.size(); ++s) {
    if (c_[s] == cplx{}) continue;
    int k = popcount(s);
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d;
}

std::optional<Parity> Form::parity() const {
  std::optional<Parity> p;
  for (Mask s = 0; s < c_.size(); ++s) {
    if (c_[s] == cplx{}) continue;
    Parity q = mask_parity(s);
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p;
}

bool Form::is_zero(double tol) const {
  return std::all_of(c_.begin(), c_.end(), [tol](cplx z) { return std::abs(z) <= tol; });
}

bool Form::is_real(double tol) const {
  return std::all_of(c_.begin(), c_.end(), [tol](cplx z) { return std::abs(z.imag()) <= tol; });
}

double Form::norm() const {
  double s = 0;
  for (cplx z : c_) s += std::norm(z);
  return std::sqrt(s);
}

double Form::max_abs() const {
  double m = 0;
  for (cplx z : c_) m = std::max(m, std::abs(z));
  return m;
}

Form Form::conj() const {
  Form out(*this);
  for (cplx& z : out.c_) z = std::conj(z);
  return out;
}

Form Form::real() const {
  Form out(*this);
  for (cplx& z : out.c_) z = z.real();
  return out;
}

Form Form::imag() const {
  Form out(*this);
  for (cplx& z : out.c_) z = z.imag();
  return out;
}

Form& Form::operator+=(const Form& o) {
  require_same_dim(dim_, o.dim_, "form addition");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Form& Form::operator-=(const Form& o) {
  require_same_dim(dim_, o.dim_, "form subtraction");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Form& Form::operator*=(cplx s) {
  for (cplx& z : c_) z *= s;
  return *this;
}

Form Form::operator-() const {
  Form out(*this);
  for (cplx& z : out.c_) z = -z;
  return out;
}

Form wedge(const Form& a, const Form& b) {
  require_same_dim(a.dim(), b.dim(), "wedge");
  Form out(a.dim());
  const Mask n = static_cast<Mask>(a.size());
  for (Mask s = 0; s < n; ++s) {
    if (a[s] == cplx{}) continue;
    for (Mask t = 0; t < n; ++t) {
      if ((s & t) || b[t] == cplx{}) continue;
      out[s | t] += static_cast<double>(wedge_sign(s, t)) * a[s] * b[t];
    }
  }
  return out;
}

Form contract(const Vector& v, const Form& a) {
  require_same_dim(v.dim(), a.dim(), "contract");
  Form out(a.dim());
  for (Mask s = 0; s < a.size(); ++s) {
    if (a[s] == cplx{}) continue;
    for (int i = 0; i < a.dim(); ++i) {
      if (!(s >> i & 1) || v[i] == cplx{}) continue;
      out[s & ~(Mask{1} << i)] += static_cast<double>(contract_sign(i, s)) * v[i] * a[s];
    }
  }
  return out;
}

Form sigma(const Form& a) {
  Form out(a);
  for (Mask s = 0; s < a.size(); ++s) out[s] *= static_cast<double>(sigma_sign(popcount(s)));
  return out;
}

cplx mukai_pairing_unchecked(const Form& a, const Form& b) {
  require_same_dim(a.dim(), b.dim(), "mukai pairing");
  const Mask top = a.top_mask();
  cplx acc{};
  for (Mask s = 0; s <= top; ++s) {
    const Mask t = top & ~s;
    if (a[s] == cplx{} || b[t] == cplx{}) continue;
    acc += static_cast<double>(sigma_sign(popcount(s)) * wedge_sign(s, t)) * a[s] * b[t];
  }
  return acc;
}

cplx mukai_pairing(const Form& a, const Form& b) {
  require_same_dim(a.dim(), b.dim(), "mukai pairing");
  auto pa = a.parity();
  auto pb = b.parity();
  if ((!pa && !a.is_zero()) || (!pb && !b.is_zero()))
    throw DomainError("mukai pairing: inputs must have homogeneous parity");
  if (pa && pb && *pa != *pb) throw DomainError("mukai pairing: parity mismatch");
  return mukai_pairing_unchecked(a, b);
}

Form hodge_star(const Form& a) {
  Form out(a.dim());
  const Mask top = a.top_mask();
  for (Mask s = 0; s <= top; ++s) {
    if (a[s] == cplx{}) continue;
    const Mask t = top & ~s;
    out[t] += static_cast<double>(wedge_sign(s, t)) * a[s];
  }
  return out;
}

Form wedge_exp(const Form& b, const Form& phi) {
  Form term = phi;
  Form out = phi;
  for (int k = 1; 2 * k <= b.dim(); ++k) {
    term = wedge(b, term) * (1.0 / k);
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

}  // namespace gcy
