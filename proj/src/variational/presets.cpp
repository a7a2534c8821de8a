#include <cmath>

#include "gcy/fixtures.hpp"
#include "gcy/variational.hpp"

namespace gcy {

Form preset_form(const std::string& name) {
  if (name == "symplectic") return symplectic_rho();
  if (name == "calabi_yau" || name == "calabi-yau") return calabi_yau_rho();
  throw DomainError("unknown initial preset '" + name + "' (expected symplectic or calabi_yau)");
}

namespace {

// gamma with Gaussian amplitudes on the nonzero band modes, parity p.
GridForm random_potential(const TorusGrid& g, Parity p, std::uint64_t seed) {
  Rng rng(seed);
  Spectrum gamma(g, p);
  const int nc = g.num_channels();
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const std::size_t n = g.negated_mode(m);
    if (n <= m) continue;  // filled from its partner; the zero mode is closed anyway
    for (int c = 0; c < nc; ++c) {
      const cplx a = complex_normal(rng);
      gamma.mode_data(m)[c] = a;
      gamma.mode_data(n)[c] = std::conj(a);
    }
  }
  return synthesize(gamma);
}

GridForm scaled(GridForm f, const TorusGrid& g, Parity p, double amplitude) {
  const double mx = f.max_abs();
  if (mx == 0.0) return GridForm(g, p);
  f *= amplitude / mx;
  return f;
}

void check_amplitude(double amplitude) {
  if (!(amplitude >= 0)) throw DomainError("perturbation amplitude must be non-negative");
}

}  // namespace

GridForm random_exact_perturbation(const TorusGrid& g, Parity p, double amplitude, std::uint64_t seed) {
  check_amplitude(amplitude);
  if (amplitude == 0.0 || g.cutoff() == 0) return GridForm(g, p);
  return scaled(spectral_d(random_potential(g, opposite(p), seed)), g, p, amplitude);
}

GridForm random_exact_perturbation(const TorusGrid& g, Parity p, double amplitude, std::uint64_t seed, const Form& h) {
  check_amplitude(amplitude);
  if (h.is_zero()) return random_exact_perturbation(g, p, amplitude, seed);
  if (amplitude == 0.0 || g.cutoff() == 0) return GridForm(g, p);
  return scaled(d_H(random_potential(g, opposite(p), seed), GridForm::constant(g, h)), g, p, amplitude);
}

GridForm initial_data(const FlowProblem& prob) {
  const TorusGrid g(prob.dim, prob.points, prob.cutoff);
  const Form base = prob.base ? *prob.base : preset_form(prob.initial);
  if (base.dim() != g.dim()) throw DimensionError("initial form lives in dimension " + std::to_string(base.dim()));
  GridForm rho = GridForm::constant(g, base);
  const Form h = prob.h.value_or(Form(g.dim()));
  rho += random_exact_perturbation(g, rho.parity(), prob.perturbation, prob.seed, h);
  return rho;
}

}  // namespace gcy
