#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gcy/clifford.hpp"

namespace gcy {

// Fixed data for so(V+V*) at n = 6: a 66-element basis, its matrices, sigma actions
// and the inverse of the trace form.
class SpinBasis {
 public:
  static constexpr int kDim = 6;
  static constexpr int kSize = 66;

  static const SpinBasis& get();

  const SoElement& element(int i) const { return elems_[static_cast<std::size_t>(i)]; }
  const MatC& so_matrix(int i) const { return mats_[static_cast<std::size_t>(i)]; }
  const MatR& spin(int i) const { return spins_[static_cast<std::size_t>(i)]; }
  const MatR& gram() const { return gram_; }
  const MatR& gram_inverse() const { return gram_inv_; }
  std::string label(int i) const;

 private:
  SpinBasis();
  std::vector<SoElement> elems_;
  std::vector<MatC> mats_;
  std::vector<MatR> spins_;  // 64 x 64, real for the real basis
  MatR gram_, gram_inv_;
};

void require_dim6(const Form& rho, const char* what);

// Coefficients c of mu(rho) = sum c_i a_i, from tr(mu a_i) = 1/2 <rho, sigma(a_i) rho>.
VecC moment_coefficients(const Form& rho);
SoElement moment_map(const Form& rho);
// q = trace of sigma(mu)^2 over a half-spin space = 4 tr(mu^2) on the 12 x 12 realization.
cplx quartic_q(const Form& rho);
double mu_square_check(const Form& rho);

struct PurePair {
  Form alpha;
  Form beta;
};
PurePair decompose_pure(const Form& rho);

enum class TypeTag {
  SymplecticBTransform,
  CalabiYauBTransform,
  FoliatedType,
  OddFibrationType,
  OddComplexType,
  Unstable
};
std::string to_string(TypeTag t);
std::optional<TypeTag> type_tag_from_string(const std::string& s);

struct StabilityReport {
  cplx q;
  bool stable = false;
  bool degenerate = false;
  double phi_val = 0.0;
  std::optional<Form> rho_hat;
  std::optional<PurePair> pure_pair;
  TypeTag type_tag = TypeTag::Unstable;
};

// Stability threshold: q < -kStableTol * |rho|^4.
constexpr double kStableTol = 1e-9;

StabilityReport stability_analyze(const Form& rho, bool real_input = true);
// Closed form rho_hat for a stable real rho; throws DomainError otherwise.
Form rho_hat(const Form& rho);
double hitchin_phi(const Form& rho);
// Directional derivative of rho -> rho_hat, i.e. J(rho) x.
Form rho_hat_derivative(const Form& rho, const Form& x);

// J on the parity subspace of rho, in the channel order of parity_masks(6, parity).
struct JOperator {
  Parity parity;
  std::vector<Mask> channels;
  MatR matrix;

  Form apply(const Form& x) const;
};

JOperator j_operator(const Form& rho);

struct JStarCheck {
  double deviation;
  int sign;  // realized sign in J* = sign * (*sigma J sigma *)
};
JStarCheck jstar_check(const Form& rho);

struct Signature {
  int positive = 0;
  int negative = 0;
  bool operator==(const Signature&) const = default;
};
// Hermitian form -i<a, conj b> on the -i eigenspace of J.
Signature hermitian_signature(const Form& rho);

TypeTag classify_dim6(const Form& phi);

struct Classification {
  TypeTag tag;
  std::optional<cplx> c;     // degree-0 coefficient in the even symplectic case
  std::optional<Form> b;     // extracted B-field
  std::optional<Form> omega; // extracted symplectic form
};
Classification classify_dim4(const Form& phi);
Classification classify_dim2(const Form& phi);

}  // namespace gcy
