#include <cmath>

#include "gcy/variational.hpp"

namespace gcy {

namespace {

void require_exact(const GridForm& a, const char* what) {
  double lost = 0.0;
  const Spectrum s = analyze(a, &lost);
  const double nrm = std::max(1.0, l2_norm(s));
  const double off = l2_norm(s - project_exact(s)) + std::sqrt(lost * a.grid().total_volume());
  if (off > 1e-9 * nrm) throw DomainError(std::string(what) + ": direction is not an exact band-limited form");
}

}  // namespace

double hessian_form(const GridForm& rho, const GridForm& a1, const GridForm& a2, double crit_tol) {
  require_same_grid(rho, a1, "hessian_form");
  require_same_grid(rho, a2, "hessian_form");
  if (a1.parity() != rho.parity() || a2.parity() != rho.parity())
    throw DomainError("hessian_form: directions must have the parity of rho");
  const double crit = criticality_residual(rho);
  if (!(crit < crit_tol))
    throw DomainError("hessian_form: rho is not critical (||d rho_hat|| = " + std::to_string(crit) + ")");
  require_exact(a1, "hessian_form");
  require_exact(a2, "hessian_form");
  return integrate_mukai(apply_j(rho, a1), a2);
}

GridForm orbit_tangent(const GridForm& rho, const VectorField& x, const FormField& xi) {
  const TorusGrid& g = rho.grid();
  require_same_dim(g.dim(), x.dim(), "orbit_tangent");
  require_same_dim(g.dim(), xi.dim(), "orbit_tangent");
  if (!xi.is_zero() && xi.degree() != 1) throw DomainError("orbit_tangent: xi must be a 1-form field");
  GridForm act(g, opposite(rho.parity()));
  for (std::size_t p = 0; p < g.num_points(); ++p) {
    const auto pt = g.point(p);
    const Form f = xi(pt);
    Covector c(g.dim());
    for (int j = 0; j < g.dim(); ++j) c[j] = f[Mask{1} << j];
    act.set(p, clifford_act(VecCovec(x(pt), c), rho.at(p)));
  }
  return spectral_d(act);
}

}  // namespace gcy
