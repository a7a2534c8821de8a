#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gcy/error.hpp"

namespace gcy {

using cplx = std::complex<double>;
using Mask = std::uint32_t;

constexpr int kMinDim = 2;
constexpr int kMaxDim = 8;

enum class Parity { Even, Odd };

inline Parity opposite(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

// ---- sign bookkeeping on basis subsets (bit i-1 <-> dx^i) ----

inline int popcount(Mask m) { return std::popcount(m); }

// Sign of dx^S ^ dx^T relative to dx^{S|T}; 0 when S and T overlap.
inline int wedge_sign(Mask s, Mask t) {
  if (s & t) return 0;
  int inversions = 0;
  while (t) {
    int j = std::countr_zero(t);
    inversions += std::popcount(s >> (j + 1));
    t &= t - 1;
  }
  return (inversions & 1) ? -1 : 1;
}

// Sign picked up moving index i to the front of S (S must contain i).
inline int contract_sign(int i, Mask s) {
  return (std::popcount(s & ((Mask{1} << i) - 1)) & 1) ? -1 : 1;
}

// sigma acts on degree p by (-1)^{floor(p/2)}.
inline int sigma_sign(int degree) { return ((degree / 2) & 1) ? -1 : 1; }

inline Parity mask_parity(Mask s) { return (std::popcount(s) & 1) ? Parity::Odd : Parity::Even; }

// All masks of the given parity in increasing numeric order.
std::vector<Mask> parity_masks(int dim, Parity p);

class Vector {
 public:
  Vector() = default;
  explicit Vector(int dim) : c_(static_cast<std::size_t>(dim)) {}
  Vector(std::initializer_list<cplx> c) : c_(c) {}
  explicit Vector(std::vector<cplx> c) : c_(std::move(c)) {}
  static Vector basis(int dim, int i);

  int dim() const { return static_cast<int>(c_.size()); }
  cplx operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  cplx& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const cplx> components() const { return c_; }

 private:
  std::vector<cplx> c_;
};

class Covector {
 public:
  Covector() = default;
  explicit Covector(int dim) : c_(static_cast<std::size_t>(dim)) {}
  Covector(std::initializer_list<cplx> c) : c_(c) {}
  explicit Covector(std::vector<cplx> c) : c_(std::move(c)) {}
  static Covector basis(int dim, int i);

  int dim() const { return static_cast<int>(c_.size()); }
  cplx operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  cplx& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const cplx> components() const { return c_; }

 private:
  std::vector<cplx> c_;
};

// Mixed-degree complex form on R^n, dense over the 2^n basis subsets.
class Form {
 public:
  Form() : Form(kMinDim) {}
  explicit Form(int dim);
  Form(int dim, std::vector<cplx> coeffs);

  static Form scalar(int dim, cplx c);
  static Form basis(int dim, Mask s, cplx c = 1.0);
  static Form from_covector(const Covector& xi);
  static Form volume(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return c_.size(); }
  Mask top_mask() const { return static_cast<Mask>(c_.size() - 1); }

  cplx operator[](Mask s) const { return c_[s]; }
  cplx& operator[](Mask s) { return c_[s]; }
  std::span<const cplx> coeffs() const { return c_; }
  std::span<cplx> coeffs() { return c_; }

  Form grade(int k) const;
  Form parity_part(Parity p) const;
  // Degree if all nonzero entries share one degree; nullopt for zero or mixed forms.
  std::optional<int> degree() const;
  // Parity if all nonzero entries share one; nullopt for zero or mixed forms.
  std::optional<Parity> parity() const;

  bool is_zero(double tol = 0.0) const;
  bool is_real(double tol = 0.0) const;
  double norm() const;
  double max_abs() const;

  Form conj() const;
  Form real() const;
  Form imag() const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(cplx s);
  Form operator-() const;
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, cplx s) { return a *= s; }
  friend Form operator*(cplx s, Form a) { return a *= s; }
  friend Form operator*(double s, Form a) { return a *= cplx(s); }
  friend Form operator*(Form a, double s) { return a *= cplx(s); }

 private:
  int dim_;
  std::vector<cplx> c_;
};

void require_same_dim(int a, int b, const char* what);

Form wedge(const Form& a, const Form& b);
Form contract(const Vector& v, const Form& a);
Form sigma(const Form& a);
// Top coefficient of sigma(a)^b. Throws on parity mismatch of homogeneous inputs.
cplx mukai_pairing(const Form& a, const Form& b);
// Same quantity without the parity precondition (zero when degrees cannot meet).
cplx mukai_pairing_unchecked(const Form& a, const Form& b);
Form hodge_star(const Form& a);

// Wedge powers: exp(B) ^ phi for a 2-form B, via the finite series.
Form wedge_exp(const Form& b, const Form& phi);

}  // namespace gcy
