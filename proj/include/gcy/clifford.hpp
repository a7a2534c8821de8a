#pragma once

#include <vector>

#include "gcy/exterior.hpp"
#include "gcy/linalg.hpp"

namespace gcy {

// v + xi in (V + V*) (x) C. Stacked coordinates are (v_1..v_n, xi_1..xi_n).
struct VecCovec {
  Vector v;
  Covector xi;

  VecCovec() = default;
  VecCovec(Vector v_, Covector xi_);
  explicit VecCovec(int dim) : v(dim), xi(dim) {}

  int dim() const { return v.dim(); }
  VecC stacked() const;
  static VecCovec from_stacked(const VecC& x);
};

cplx pairing(const VecCovec& x, const VecCovec& y);
// Gram matrix of the pairing on stacked coordinates.
MatC pairing_gram(int dim);

Form clifford_act(const VecCovec& x, const Form& a);
// Matrix of phi -> x.phi on the 2^n coefficient space.
MatC clifford_matrix(const VecCovec& x);

// a = A + B + beta in End V + L^2 V* + L^2 V.
struct SoElement {
  MatC endo;       // n x n
  Form two_form;   // degree 2
  MatC bivector;   // n x n antisymmetric

  SoElement() = default;
  explicit SoElement(int dim);
  SoElement(MatC endo_, Form two_form_, MatC bivector_);

  int dim() const { return static_cast<int>(endo.rows()); }
  // Action on stacked (v; xi): [[-A, -beta], [B, A^T]].
  MatC matrix() const;
  static SoElement from_matrix(const MatC& m);

  SoElement& operator+=(const SoElement& o);
  SoElement& operator*=(cplx s);
  friend SoElement operator+(SoElement a, const SoElement& b) { return a += b; }
  friend SoElement operator*(cplx s, SoElement a) { return a *= s; }
};

// Antisymmetric coefficient matrix of a 2-form (B_ij = coefficient of dx^i^dx^j for i<j).
MatC two_form_matrix(const Form& b);
Form two_form_from_matrix(const MatC& m);

// Trace-free sigma(a) on the 2^n coefficient space, built from [sigma(a), c(x)] = c(a.x).
MatC spin_matrix(const SoElement& a);
Form spin_lie_action(const SoElement& a, const Form& phi);

Form exp_bfield(const Form& b, const Form& phi);
MatC exp_so_matrix(const SoElement& a);   // 2n x 2n group element
MatC exp_spin_matrix(const SoElement& a); // 2^n x 2^n
Form exp_so(const SoElement& a, const Form& phi);

struct IsotropicSubspace {
  std::vector<VecCovec> basis;
  int dimension() const { return static_cast<int>(basis.size()); }
  MatC matrix(int dim) const;  // 2n x dimension
};

// Matrix of x -> x.phi from stacked coordinates to the 2^n coefficient space.
MatC annihilator_system(const Form& phi);
IsotropicSubspace annihilator(const Form& phi);
bool is_pure(const Form& phi);

struct PairingIntersection {
  bool pairing_zero;
  bool intersect;
  cplx pairing;
  int intersection_dim;
};
PairingIntersection pairing_intersection_check(const Form& phi, const Form& psi);

}  // namespace gcy
