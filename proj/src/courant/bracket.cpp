#include "gcy/courant.hpp"

namespace gcy {

namespace {

void require_compatible(const SectionField& a, const SectionField& b, const char* what) {
  require_same_dim(a.dim(), b.dim(), what);
  if (a.p != b.p) throw DomainError(std::string(what) + ": sections carry forms of different degree");
}

void require_degree(const FormField& a, int deg, const char* what) {
  if (!a.is_zero() && a.degree() != deg)
    throw DomainError(std::string(what) + ": expected a homogeneous " + std::to_string(deg) + "-form field");
}

}  // namespace

SectionField CourantTerms::sum(int p) const {
  return SectionField(lie, lie_x_eta - lie_y_xi - exact, p);
}

CourantTerms courant_terms(const SectionField& s1, const SectionField& s2) {
  require_compatible(s1, s2, "courant_bracket");
  const VectorField& x = s1.vec;
  const VectorField& y = s2.vec;
  CourantTerms t;
  t.lie = lie_bracket(x, y);
  t.lie_x_eta = lie_derivative(x, s2.form);
  t.lie_y_xi = lie_derivative(y, s1.form);
  t.exact = exterior_d(contract(x, s2.form) - contract(y, s1.form)) * 0.5;
  return t;
}

SectionField courant_bracket(const SectionField& s1, const SectionField& s2) {
  return courant_terms(s1, s2).sum(s1.p);
}

SectionField twisted_bracket(const SectionField& s1, const SectionField& s2, const FormField& h) {
  require_compatible(s1, s2, "twisted_bracket");
  require_same_dim(s1.dim(), h.dim(), "twisted_bracket");
  if (s1.p != 1) throw DomainError("twisted_bracket: defined for sections of T + T* (p = 1)");
  require_degree(h, 3, "twisted_bracket");
  if (!is_closed(h)) throw DomainError("twisted_bracket: H is not closed");
  SectionField out = courant_bracket(s1, s2);
  out.form += contract(s1.vec, contract(s2.vec, h));
  return out;
}

SectionField jacobiator(const SectionField& s1, const SectionField& s2, const SectionField& s3) {
  require_compatible(s1, s2, "jacobiator");
  require_compatible(s2, s3, "jacobiator");
  return courant_bracket(courant_bracket(s1, s2), s3) + courant_bracket(courant_bracket(s2, s3), s1) +
         courant_bracket(courant_bracket(s3, s1), s2);
}

SectionField bfield_automorphism_unchecked(const FormField& alpha, const SectionField& s) {
  require_same_dim(alpha.dim(), s.dim(), "bfield_automorphism");
  require_degree(alpha, s.p + 1, "bfield_automorphism");
  return SectionField(s.vec, s.form + contract(s.vec, alpha), s.p);
}

SectionField bfield_automorphism(const FormField& alpha, const SectionField& s) {
  if (!is_closed(alpha)) throw DomainError("bfield_automorphism: alpha is not closed");
  return bfield_automorphism_unchecked(alpha, s);
}

// ---- random sections ----

TrigPoly random_trig_poly(Rng& rng, int dim, int kmax, int nterms, bool integer_amps) {
  std::uniform_int_distribution<int> kd(-kmax, kmax), ad(-3, 3);
  auto amp = [&]() { return integer_amps ? cplx(ad(rng), ad(rng)) : complex_normal(rng); };
  TrigPoly t(dim);
  const std::vector<int> zero(static_cast<std::size_t>(dim));
  for (int i = 0; i < nterms; ++i) {
    std::vector<int> k(static_cast<std::size_t>(dim));
    for (int& f : k) f = kd(rng);
    const cplx a = amp();
    if (k == zero) {
      t.add({k, zero}, a.real());
      continue;
    }
    t.add({k, zero}, a);
    for (int& f : k) f = -f;
    t.add({k, zero}, std::conj(a));
  }
  return t;
}

FormField random_form_field(Rng& rng, int dim, int degree, int kmax, int nterms, bool integer_amps) {
  FormField out(dim);
  for (Mask s = 0; s < (Mask{1} << dim); ++s)
    if (popcount(s) == degree) out.add(s, random_trig_poly(rng, dim, kmax, nterms, integer_amps));
  return out;
}

SectionField random_section(Rng& rng, int dim, int p, int kmax, int nterms, bool integer_amps) {
  VectorField x(dim);
  for (int i = 0; i < dim; ++i) x[i] = random_trig_poly(rng, dim, kmax, nterms, integer_amps);
  return SectionField(x, random_form_field(rng, dim, p, kmax, nterms, integer_amps), p);
}

FormField random_closed_form_field(Rng& rng, int dim, int degree, int kmax, int nterms) {
  FormField out = random_form_field(rng, dim, degree, 0, 1);
  if (degree > 0) out += exterior_d(random_form_field(rng, dim, degree - 1, kmax, nterms));
  return out;
}

}  // namespace gcy
