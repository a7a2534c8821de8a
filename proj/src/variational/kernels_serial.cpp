// Reference kernels: one dense 64 x 64 spin-matrix evaluation per grid point, no threading.

#include "pointwise.hpp"

namespace gcy::detail {

namespace {

void require_dim6_grid(const GridForm& rho, const char* what) {
  if (rho.grid().dim() != 6) throw DimensionError(std::string(what) + ": needs a 6-dimensional grid");
}

[[noreturn]] void unstable(const GridForm& rho, std::size_t p, const char* what) {
  throw StabilityError(std::string(what) + ": rho is not stable at " + describe_point(rho.grid(), p), p);
}

}  // namespace

HatField hat_field_serial(const GridForm& rho) {
  require_dim6_grid(rho, "hat_field");
  HatField out{std::vector<double>(rho.grid().num_points()), GridForm(rho.grid(), rho.parity())};
  for (std::size_t p = 0; p < rho.grid().num_points(); ++p) {
    const Form r = rho.at(p);
    if (r.is_zero()) unstable(rho, p, "hat_field");
    try {
      out.phi[p] = hitchin_phi(r);
      out.rho_hat.set(p, rho_hat(r));
    } catch (const DomainError&) {
      unstable(rho, p, "hat_field");
    }
  }
  return out;
}

GridForm apply_j_serial(const GridForm& rho, const GridForm& w) {
  require_dim6_grid(rho, "apply_j");
  require_same_grid(rho, w, "apply_j");
  if (rho.parity() != w.parity()) throw DomainError("apply_j: direction must have the parity of rho");
  GridForm out(rho.grid(), rho.parity());
  for (std::size_t p = 0; p < rho.grid().num_points(); ++p) {
    const Form r = rho.at(p);
    if (r.is_zero()) unstable(rho, p, "apply_j");
    try {
      out.set(p, rho_hat_derivative(r, w.at(p)).real());
    } catch (const DomainError&) {
      unstable(rho, p, "apply_j");
    }
  }
  return out;
}

}  // namespace gcy::detail
