#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "gcy/clifford.hpp"
#include "gcy/fixtures.hpp"

namespace gcy {

// Finite sum of terms a * x^e * exp(i k.x) with integer k and non-negative e.
// Terms with e = 0 are periodic (torus chart); x^e terms give the polynomial chart
// used for hand examples like x2 dx3. Both are closed under products and derivatives.
class TrigPoly {
 public:
  struct Key {
    std::vector<int> freq;
    std::vector<int> power;
    auto operator<=>(const Key&) const = default;
  };
  using Terms = std::map<Key, cplx>;

  explicit TrigPoly(int dim = kMinDim) : dim_(dim) {}

  static TrigPoly constant(int dim, cplx c);
  static TrigPoly term(int dim, std::vector<int> freq, cplx amp, std::vector<int> power = {});
  static TrigPoly cos_mode(int dim, int axis, int k = 1);  // cos(k x_axis)
  static TrigPoly sin_mode(int dim, int axis, int k = 1);  // sin(k x_axis)
  static TrigPoly coordinate(int dim, int axis);           // x_axis (polynomial chart)

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  void add(const Key& key, cplx amp);

  bool is_zero(double tol = 0.0) const;
  // a_{-k} = conj(a_k) for every term.
  bool is_real(double tol = 1e-14) const;
  bool is_periodic() const;
  int max_frequency() const;
  double max_abs() const;

  TrigPoly derivative(int axis) const;
  cplx operator()(std::span<const double> x) const;
  TrigPoly conj() const;

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(cplx s);
  TrigPoly operator-() const;
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(TrigPoly a, cplx s) { return a *= s; }
  friend TrigPoly operator*(cplx s, TrigPoly a) { return a *= s; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

 private:
  int dim_;
  Terms terms_;
};

// Form-valued coefficient field, sparse over basis subsets.
class FormField {
 public:
  explicit FormField(int dim = kMinDim) : dim_(dim) {}
  static FormField constant(const Form& f);
  static FormField scalar(const TrigPoly& f);
  static FormField basis(Mask s, const TrigPoly& f);

  int dim() const { return dim_; }
  const std::map<Mask, TrigPoly>& components() const { return comps_; }
  TrigPoly component(Mask s) const;
  void add(Mask s, const TrigPoly& f);

  std::optional<int> degree() const;
  bool is_zero(double tol = 0.0) const;
  double max_abs() const;
  Form operator()(std::span<const double> x) const;
  FormField conj() const;

  FormField& operator+=(const FormField& o);
  FormField& operator-=(const FormField& o);
  FormField& operator*=(cplx s);
  FormField operator-() const;
  friend FormField operator+(FormField a, const FormField& b) { return a += b; }
  friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
  friend FormField operator*(FormField a, cplx s) { return a *= s; }
  friend FormField operator*(cplx s, FormField a) { return a *= s; }
  friend FormField operator*(const TrigPoly& f, const FormField& a);

 private:
  void prune(Mask s);
  int dim_;
  std::map<Mask, TrigPoly> comps_;
};

class VectorField {
 public:
  explicit VectorField(int dim = kMinDim);
  static VectorField coordinate(int dim, int axis);  // d/dx^axis
  static VectorField constant(const Vector& v);

  int dim() const { return static_cast<int>(c_.size()); }
  const TrigPoly& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  TrigPoly& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  bool is_zero(double tol = 0.0) const;
  double max_abs() const;
  Vector operator()(std::span<const double> x) const;
  // X(f) = X^i d_i f
  TrigPoly apply(const TrigPoly& f) const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(cplx s);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(cplx s, VectorField a) { return a *= s; }

 private:
  std::vector<TrigPoly> c_;
};

FormField exterior_d(const FormField& a);
FormField wedge(const FormField& a, const FormField& b);
FormField contract(const VectorField& x, const FormField& a);
FormField lie_derivative(const VectorField& x, const FormField& a);
VectorField lie_bracket(const VectorField& x, const VectorField& y);
// exp(b) ^ phi for a degree-2 field b.
FormField wedge_exp(const FormField& b, const FormField& phi);
// d a == 0 up to round-off relative to the size of a.
bool is_closed(const FormField& a, double rel_tol = 1e-12);

// X + xi with xi a p-form field.
struct SectionField {
  VectorField vec;
  FormField form;
  int p = 1;

  SectionField() = default;
  SectionField(VectorField v, FormField f, int p_);
  int dim() const { return vec.dim(); }
  bool is_zero(double tol = 0.0) const { return vec.is_zero(tol) && form.is_zero(tol); }
  double max_abs() const;

  SectionField& operator+=(const SectionField& o);
  SectionField& operator-=(const SectionField& o);
  friend SectionField operator+(SectionField a, const SectionField& b) { return a += b; }
  friend SectionField operator-(SectionField a, const SectionField& b) { return a -= b; }
};

// The four pieces of the bracket, kept apart so each can be checked on its own.
struct CourantTerms {
  VectorField lie;       // [X, Y]
  FormField lie_x_eta;   // L_X eta
  FormField lie_y_xi;    // L_Y xi
  FormField exact;       // 1/2 d(i_X eta - i_Y xi)

  SectionField sum(int p) const;
};

CourantTerms courant_terms(const SectionField& s1, const SectionField& s2);
SectionField courant_bracket(const SectionField& s1, const SectionField& s2);
// courant_bracket + i_X i_Y H, for p = 1 and closed H.
SectionField twisted_bracket(const SectionField& s1, const SectionField& s2, const FormField& h);
SectionField jacobiator(const SectionField& s1, const SectionField& s2, const SectionField& s3);

// X + xi -> X + xi + i_X alpha. The checked form rejects alpha with d alpha != 0.
SectionField bfield_automorphism(const FormField& alpha, const SectionField& s);
SectionField bfield_automorphism_unchecked(const FormField& alpha, const SectionField& s);

// ---- random sections for property tests ----

// Real trig polynomial with frequencies |k_i| <= kmax; integer amplitudes keep all
// bracket arithmetic exact in floating point.
TrigPoly random_trig_poly(Rng& rng, int dim, int kmax, int nterms, bool integer_amps = true);
FormField random_form_field(Rng& rng, int dim, int degree, int kmax, int nterms, bool integer_amps = true);
SectionField random_section(Rng& rng, int dim, int p, int kmax, int nterms, bool integer_amps = true);
// d(gamma) + constant: a closed field of the given degree.
FormField random_closed_form_field(Rng& rng, int dim, int degree, int kmax, int nterms);

// A fixed p = 1 triple on T^3 with nonzero Jacobiator, and its stored value.
struct JacobiatorFixture {
  SectionField s1, s2, s3;
  SectionField expected;
};
JacobiatorFixture frozen_jacobiator_fixture();

// ---- integrability of annihilator bundles ----

struct ClosureReport {
  int samples = 0;
  bool closed = false;              // d phi == 0 exactly
  double max_residual = 0.0;        // max |[s1, s2] . phi| over sample points
  double min_nondegeneracy = 0.0;   // min |<phi, conj phi>|
  double max_frame_jump = 0.0;      // largest frame rotation between consecutive samples
};

// Random E_phi sections are built from a smoothly tracked frame of the annihilator; the
// bracket at each sample point depends on 1-jets only, taken by central differences.
ClosureReport annihilator_closure_check(const FormField& phi, int samples, std::uint64_t seed = 1);

}  // namespace gcy
