#include "gcy/quartic.hpp"

namespace gcy {

namespace {

constexpr double kTol = 1e-9;

Parity homogeneous_parity(const Form& phi, const char* what) {
  if (phi.is_zero()) throw DomainError(std::string(what) + ": zero spinor");
  auto p = phi.parity();
  if (!p) throw DomainError(std::string(what) + ": spinor must have homogeneous parity");
  return *p;
}

// Split beta/c = B + i omega into real and imaginary parts.
void extract_symplectic(const Form& phi, Classification& out) {
  const cplx c = phi[0];
  const Form ratio = phi.grade(2) * (1.0 / c);
  out.c = c;
  out.b = ratio.real();
  out.omega = ratio.imag();
}

}  // namespace

TypeTag classify_dim6(const Form& phi) {
  require_dim6(phi, "classify_dim6");
  const Parity par = homogeneous_parity(phi, "classify_dim6");
  const double n2 = phi.norm() * phi.norm();
  if (!is_pure(phi)) throw DomainError("classify_dim6: spinor is not pure");
  if (std::abs(mukai_pairing(phi, phi.conj())) <= kTol * n2)
    throw DomainError("classify_dim6: <phi, conj phi> vanishes");
  if (par == Parity::Even) {
    if (std::abs(phi[0]) > kTol * phi.norm()) return TypeTag::SymplecticBTransform;
    const Form p2 = phi.grade(2);
    if (p2.is_zero(kTol * phi.norm()) || !wedge(p2, p2).is_zero(1e-7 * n2))
      throw DomainError("classify_dim6: degree-2 part of a foliated-type spinor is not decomposable");
    return TypeTag::FoliatedType;
  }
  // dim of E_phi intersected with the covectors = nullity of xi -> xi ^ phi.
  const MatC sys = annihilator_system(phi).rightCols(6);
  const int k = 6 - numeric_rank(sys);
  if (k == 1) return TypeTag::OddFibrationType;
  if (k == 3) return TypeTag::OddComplexType;
  throw DomainError("classify_dim6: unexpected covector annihilator dimension " + std::to_string(k));
}

Classification classify_dim4(const Form& phi) {
  if (phi.dim() != 4) throw DimensionError("classify_dim4: needs dimension 4");
  const Parity par = homogeneous_parity(phi, "classify_dim4");
  const double n2 = phi.norm() * phi.norm();
  if (std::abs(mukai_pairing(phi, phi)) > kTol * n2)
    throw DomainError("classify_dim4: <phi, phi> != 0, spinor is not pure");
  if (std::abs(mukai_pairing(phi, phi.conj())) <= kTol * n2)
    throw DomainError("classify_dim4: <phi, conj phi> vanishes");
  Classification out{TypeTag::OddFibrationType, {}, {}, {}};
  if (par == Parity::Odd) return out;
  if (std::abs(phi[0]) > kTol * phi.norm()) {
    out.tag = TypeTag::SymplecticBTransform;
    extract_symplectic(phi, out);
  } else {
    out.tag = TypeTag::CalabiYauBTransform;
  }
  return out;
}

Classification classify_dim2(const Form& phi) {
  if (phi.dim() != 2) throw DimensionError("classify_dim2: needs dimension 2");
  const Parity par = homogeneous_parity(phi, "classify_dim2");
  const double n2 = phi.norm() * phi.norm();
  if (par == Parity::Odd) {
    if (std::abs(wedge(phi, phi.conj())[3]) <= kTol * n2)
      throw DomainError("classify_dim2: phi ^ conj phi vanishes");
    return {TypeTag::OddComplexType, {}, {}, {}};
  }
  if (std::abs(phi[0]) <= kTol * phi.norm())
    throw DomainError("classify_dim2: degree-0 part vanishes");
  Classification out{TypeTag::SymplecticBTransform, {}, {}, {}};
  extract_symplectic(phi, out);
  if (out.omega->is_zero(kTol)) throw DomainError("classify_dim2: extracted omega vanishes");
  return out;
}

}  // namespace gcy
