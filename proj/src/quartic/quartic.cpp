#include <cmath>

#include "gcy/quartic.hpp"

namespace gcy {

namespace {

VecC as_vec(const Form& f) { return Eigen::Map<const VecC>(f.coeffs().data(), f.size()); }

Form as_form(const VecC& v) {
  Form f(6);
  for (Mask s = 0; s < f.size(); ++s) f[s] = v(s);
  return f;
}

// <x, y> on raw coefficient vectors of 6-forms.
cplx mukai(const VecC& x, const VecC& y) {
  constexpr Mask top = 63;
  cplx acc{};
  for (Mask s = 0; s <= top; ++s) {
    const Mask t = top & ~s;
    acc += static_cast<double>(sigma_sign(popcount(s)) * wedge_sign(s, t)) * x(s) * y(t);
  }
  return acc;
}

// m_i = 1/2 <x, sigma_i y>, symmetric in (x, y).
VecC half_pairings(const VecC& x, const VecC& y) {
  const SpinBasis& sb = SpinBasis::get();
  VecC m(SpinBasis::kSize);
  for (int i = 0; i < SpinBasis::kSize; ++i) m(i) = 0.5 * mukai(x, sb.spin(i).cast<cplx>() * y);
  return m;
}

VecC sigma_of(const VecC& coeffs, const VecC& x) {
  const SpinBasis& sb = SpinBasis::get();
  VecC out = VecC::Zero(x.size());
  for (int i = 0; i < SpinBasis::kSize; ++i)
    if (coeffs(i) != cplx{}) out += coeffs(i) * (sb.spin(i).cast<cplx>() * x);
  return out;
}

double scale4(const Form& rho) {
  const double n2 = rho.norm() * rho.norm();
  return n2 * n2;
}

}  // namespace

VecC moment_coefficients(const Form& rho) {
  require_dim6(rho, "moment_map");
  if (!rho.is_zero() && !rho.parity()) throw DomainError("moment_map: rho must have homogeneous parity");
  const VecC x = as_vec(rho);
  return SpinBasis::get().gram_inverse().cast<cplx>() * half_pairings(x, x);
}

SoElement moment_map(const Form& rho) {
  const VecC c = moment_coefficients(rho);
  const SpinBasis& sb = SpinBasis::get();
  MatC m = MatC::Zero(12, 12);
  for (int i = 0; i < SpinBasis::kSize; ++i) m += c(i) * sb.so_matrix(i);
  return SoElement::from_matrix(m);
}

cplx quartic_q(const Form& rho) {
  const VecC c = moment_coefficients(rho);
  return 4.0 * (c.transpose() * SpinBasis::get().gram().cast<cplx>() * c)(0, 0);
}

double mu_square_check(const Form& rho) {
  const MatC mu = moment_map(rho).matrix();
  const cplx q = quartic_q(rho);
  const MatC dev = mu * mu - (q / 48.0) * MatC::Identity(12, 12);
  return dev.cwiseAbs().maxCoeff();
}

PurePair decompose_pure(const Form& rho) {
  const VecC c = moment_coefficients(rho);
  const cplx q = 4.0 * (c.transpose() * SpinBasis::get().gram().cast<cplx>() * c)(0, 0);
  if (std::abs(q) <= kStableTol * scale4(rho))
    throw DomainError("decompose_pure: q(rho) vanishes, decomposition undefined");
  const cplx t2 = std::sqrt(3.0 / q);
  const VecC x = as_vec(rho);
  const VecC s = sigma_of(c, x);
  const Form half = as_form(x * 0.5);
  const Form twist = as_form(s * (2.0 * t2 / 3.0));
  return {half + twist, half - twist};
}

std::string to_string(TypeTag t) {
  switch (t) {
    case TypeTag::SymplecticBTransform: return "SymplecticBTransform";
    case TypeTag::CalabiYauBTransform: return "CalabiYauBTransform";
    case TypeTag::FoliatedType: return "FoliatedType";
    case TypeTag::OddFibrationType: return "OddFibrationType";
    case TypeTag::OddComplexType: return "OddComplexType";
    case TypeTag::Unstable: return "Unstable";
  }
  return "Unstable";
}

std::optional<TypeTag> type_tag_from_string(const std::string& s) {
  for (TypeTag t : {TypeTag::SymplecticBTransform, TypeTag::CalabiYauBTransform, TypeTag::FoliatedType,
                    TypeTag::OddFibrationType, TypeTag::OddComplexType, TypeTag::Unstable})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

namespace {

struct HatData {
  double phi;
  double sign;
  VecC c;
  VecC smu_rho;  // sigma(mu) rho
};

HatData hat_data(const Form& rho) {
  require_dim6(rho, "rho_hat");
  if (!rho.is_real(1e-14 * std::max(1.0, rho.max_abs())))
    throw DomainError("rho_hat: rho must be real");
  const VecC c = moment_coefficients(rho);
  const double q = 4.0 * (c.transpose() * SpinBasis::get().gram().cast<cplx>() * c)(0, 0).real();
  if (!(q < -kStableTol * scale4(rho))) throw DomainError("rho_hat: rho is not stable (q >= 0)");
  const double phi = std::sqrt(-q / 3.0);
  const VecC x = as_vec(rho);
  const VecC s = sigma_of(c, x);
  const double orient = mukai(s, x).real();
  return {phi, orient > 0 ? 1.0 : -1.0, c, s};
}

}  // namespace

Form rho_hat(const Form& rho) {
  const HatData h = hat_data(rho);
  return as_form(h.smu_rho * (h.sign * 4.0 / (3.0 * h.phi))).real();
}

double hitchin_phi(const Form& rho) { return hat_data(rho).phi; }

Form rho_hat_derivative(const Form& rho, const Form& x) {
  const HatData h = hat_data(rho);
  const VecC r = as_vec(rho);
  const VecC xv = as_vec(x);
  const VecC mx = half_pairings(r, xv);
  const VecC cx = SpinBasis::get().gram_inverse().cast<cplx>() * mx;
  const VecC ds = sigma_of(2.0 * cx, r) + sigma_of(h.c, xv);
  const double dphi = -(8.0 / 3.0) * (h.c.array() * mx.array()).sum().real() / h.phi;
  const VecC out = (4.0 / 3.0) * h.sign * (ds / h.phi - h.smu_rho * (dphi / (h.phi * h.phi)));
  return as_form(out);
}

StabilityReport stability_analyze(const Form& rho, bool real_input) {
  require_dim6(rho, "stability_analyze");
  if (rho.is_zero()) throw DomainError("stability_analyze: zero spinor");
  if (real_input && !rho.is_real(1e-14 * rho.max_abs()))
    throw DomainError("stability_analyze: input flagged real has imaginary coefficients");
  StabilityReport rep;
  rep.q = quartic_q(rho);
  const double tol = kStableTol * scale4(rho);
  rep.degenerate = std::abs(rep.q) <= tol;
  rep.stable = real_input && rep.q.real() < -tol;
  if (rep.stable) {
    rep.phi_val = std::sqrt(-rep.q.real() / 3.0);
    Form hat = rho_hat(rho);
    Form alpha = (rho + hat * cplx(0, 1)) * 0.5;
    rep.pure_pair = PurePair{alpha, alpha.conj()};
    rep.rho_hat = std::move(hat);
    rep.type_tag = classify_dim6(alpha);
  } else if (!rep.degenerate) {
    rep.pure_pair = decompose_pure(rho);
  }
  return rep;
}

}  // namespace gcy
