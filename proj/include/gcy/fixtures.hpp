#pragma once

#include <random>

#include "gcy/clifford.hpp"

namespace gcy {

// omega = dx1^dx2 + dx3^dx4 + ... on R^n (n even).
Form standard_omega(int dim);
// Omega = (dx1 + i dx2) ^ (dx3 + i dx4) ^ (dx5 + i dx6).
Form standard_Omega();
// 2 Re exp(i omega) = 2 - omega^2 (n = 6).
Form symplectic_rho();
// Omega + conj(Omega).
Form calabi_yau_rho();
// 1 + vol.
Form split_rho();

using Rng = std::mt19937_64;

double normal(Rng& rng, double sd = 1.0);
cplx complex_normal(Rng& rng, double sd = 1.0);

Form random_form(Rng& rng, int dim, double sd = 1.0);
Form random_real_form(Rng& rng, int dim, double sd = 1.0);
Form random_parity_form(Rng& rng, int dim, Parity p, bool real, double sd = 1.0);
Form random_two_form(Rng& rng, int dim, bool real, double sd = 1.0);
VecCovec random_veccovec(Rng& rng, int dim, bool real, double sd = 1.0);
SoElement random_so(Rng& rng, int dim, bool real, double sd = 1.0);
// Nondegenerate real 2-form: omega pushed by a random near-identity linear map.
Form random_symplectic_form(Rng& rng, int dim);
// e^{a} e^{B} (2 - omega'^2) with random real a, B and nondegenerate omega'.
Form random_stable_even(Rng& rng, double so_scale = 0.3);
// e^{a} e^{B} (Omega' + conj Omega') for a random real frame.
Form random_stable_odd(Rng& rng, double so_scale = 0.3);

}  // namespace gcy
