#include "gcy/courant.hpp"

namespace gcy {

// ---- FormField ----

FormField FormField::constant(const Form& f) {
  FormField out(f.dim());
  for (Mask s = 0; s < f.size(); ++s)
    if (f[s] != cplx{}) out.add(s, TrigPoly::constant(f.dim(), f[s]));
  return out;
}

FormField FormField::scalar(const TrigPoly& f) { return basis(0, f); }

FormField FormField::basis(Mask s, const TrigPoly& f) {
  FormField out(f.dim());
  out.add(s, f);
  return out;
}

TrigPoly FormField::component(Mask s) const {
  const auto it = comps_.find(s);
  return it == comps_.end() ? TrigPoly(dim_) : it->second;
}

void FormField::prune(Mask s) {
  const auto it = comps_.find(s);
  if (it != comps_.end() && it->second.terms().empty()) comps_.erase(it);
}

void FormField::add(Mask s, const TrigPoly& f) {
  require_same_dim(dim_, f.dim(), "FormField::add");
  if (s >> dim_) throw DimensionError("FormField::add: basis subset out of range");
  auto [it, inserted] = comps_.try_emplace(s, f);
  if (!inserted) it->second += f;
  prune(s);
}

std::optional<int> FormField::degree() const {
  std::optional<int> d;
  for (const auto& [s, f] : comps_) {
    if (d && *d != popcount(s)) return std::nullopt;
    d = popcount(s);
  }
  return d;
}

bool FormField::is_zero(double tol) const {
  for (const auto& [s, f] : comps_)
    if (!f.is_zero(tol)) return false;
  return true;
}

double FormField::max_abs() const {
  double m = 0.0;
  for (const auto& [s, f] : comps_) m = std::max(m, f.max_abs());
  return m;
}

Form FormField::operator()(std::span<const double> x) const {
  Form out(dim_);
  for (const auto& [s, f] : comps_) out[s] = f(x);
  return out;
}

FormField FormField::conj() const {
  FormField out(dim_);
  for (const auto& [s, f] : comps_) out.add(s, f.conj());
  return out;
}

FormField& FormField::operator+=(const FormField& o) {
  require_same_dim(dim_, o.dim_, "FormField +");
  for (const auto& [s, f] : o.comps_) add(s, f);
  return *this;
}

FormField& FormField::operator-=(const FormField& o) {
  require_same_dim(dim_, o.dim_, "FormField -");
  for (const auto& [s, f] : o.comps_) add(s, -f);
  return *this;
}

FormField& FormField::operator*=(cplx c) {
  for (auto& [s, f] : comps_) f *= c;
  std::erase_if(comps_, [](const auto& kv) { return kv.second.terms().empty(); });
  return *this;
}

FormField FormField::operator-() const {
  FormField out = *this;
  return out *= -1.0;
}

FormField operator*(const TrigPoly& f, const FormField& a) {
  require_same_dim(f.dim(), a.dim_, "TrigPoly * FormField");
  FormField out(a.dim_);
  for (const auto& [s, g] : a.comps_) out.add(s, f * g);
  return out;
}

// ---- VectorField ----

VectorField::VectorField(int dim) : c_(static_cast<std::size_t>(dim), TrigPoly(dim)) {}

VectorField VectorField::coordinate(int dim, int axis) {
  VectorField x(dim);
  x[axis] = TrigPoly::constant(dim, 1.0);
  return x;
}

VectorField VectorField::constant(const Vector& v) {
  VectorField x(v.dim());
  for (int i = 0; i < v.dim(); ++i) x[i] = TrigPoly::constant(v.dim(), v[i]);
  return x;
}

bool VectorField::is_zero(double tol) const {
  for (const auto& f : c_)
    if (!f.is_zero(tol)) return false;
  return true;
}

double VectorField::max_abs() const {
  double m = 0.0;
  for (const auto& f : c_) m = std::max(m, f.max_abs());
  return m;
}

Vector VectorField::operator()(std::span<const double> x) const {
  Vector v(dim());
  for (int i = 0; i < dim(); ++i) v[i] = (*this)[i](x);
  return v;
}

TrigPoly VectorField::apply(const TrigPoly& f) const {
  require_same_dim(dim(), f.dim(), "VectorField::apply");
  TrigPoly out(dim());
  for (int i = 0; i < dim(); ++i)
    if (!(*this)[i].terms().empty()) out += (*this)[i] * f.derivative(i);
  return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  require_same_dim(dim(), o.dim(), "VectorField +");
  for (int i = 0; i < dim(); ++i) (*this)[i] += o[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  require_same_dim(dim(), o.dim(), "VectorField -");
  for (int i = 0; i < dim(); ++i) (*this)[i] -= o[i];
  return *this;
}

VectorField& VectorField::operator*=(cplx s) {
  for (auto& f : c_) f *= s;
  return *this;
}

// ---- calculus ----

FormField exterior_d(const FormField& a) {
  const int n = a.dim();
  FormField out(n);
  for (const auto& [s, f] : a.components())
    for (int j = 0; j < n; ++j) {
      const Mask bit = Mask{1} << j;
      if (s & bit) continue;
      TrigPoly df = f.derivative(j);
      if (df.terms().empty()) continue;
      out.add(s | bit, df * cplx(wedge_sign(bit, s)));
    }
  return out;
}

FormField wedge(const FormField& a, const FormField& b) {
  require_same_dim(a.dim(), b.dim(), "wedge(FormField)");
  FormField out(a.dim());
  for (const auto& [s, f] : a.components())
    for (const auto& [t, g] : b.components()) {
      const int sg = wedge_sign(s, t);
      if (sg != 0) out.add(s | t, (f * g) * cplx(sg));
    }
  return out;
}

FormField contract(const VectorField& x, const FormField& a) {
  require_same_dim(x.dim(), a.dim(), "contract(VectorField, FormField)");
  FormField out(a.dim());
  for (const auto& [s, f] : a.components())
    for (int i = 0; i < a.dim(); ++i) {
      const Mask bit = Mask{1} << i;
      if (!(s & bit) || x[i].terms().empty()) continue;
      out.add(s & ~bit, (x[i] * f) * cplx(contract_sign(i, s)));
    }
  return out;
}

FormField lie_derivative(const VectorField& x, const FormField& a) {
  return exterior_d(contract(x, a)) + contract(x, exterior_d(a));
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_dim(x.dim(), y.dim(), "lie_bracket");
  VectorField out(x.dim());
  for (int j = 0; j < x.dim(); ++j) out[j] = x.apply(y[j]) - y.apply(x[j]);
  return out;
}

FormField wedge_exp(const FormField& b, const FormField& phi) {
  require_same_dim(b.dim(), phi.dim(), "wedge_exp(FormField)");
  if (!b.is_zero() && b.degree() != 2) throw DomainError("wedge_exp: exponent must be a 2-form field");
  FormField out = phi, term = phi;
  for (int k = 1; 2 * k <= b.dim(); ++k) {
    term = wedge(b, term) * cplx(1.0 / k);
    out += term;
  }
  return out;
}

bool is_closed(const FormField& a, double rel_tol) {
  int kmax = 0;
  for (const auto& [s, f] : a.components()) kmax = std::max(kmax, f.max_frequency());
  return exterior_d(a).max_abs() <= rel_tol * (1.0 + kmax) * a.max_abs();
}

// ---- SectionField ----

SectionField::SectionField(VectorField v, FormField f, int p_) : vec(std::move(v)), form(std::move(f)), p(p_) {
  require_same_dim(vec.dim(), form.dim(), "SectionField");
  if (p < 0 || p > vec.dim()) throw DomainError("SectionField: form degree out of range");
  const auto d = form.degree();
  if (!form.is_zero() && d != p) throw DomainError("SectionField: form component must be homogeneous of degree p");
}

double SectionField::max_abs() const { return std::max(vec.max_abs(), form.max_abs()); }

SectionField& SectionField::operator+=(const SectionField& o) {
  if (o.p != p) throw DomainError("SectionField +: degree mismatch");
  vec += o.vec;
  form += o.form;
  return *this;
}

SectionField& SectionField::operator-=(const SectionField& o) {
  if (o.p != p) throw DomainError("SectionField -: degree mismatch");
  vec -= o.vec;
  form -= o.form;
  return *this;
}

}  // namespace gcy
