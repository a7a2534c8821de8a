#include "gcy/fixtures.hpp"

namespace gcy {

Form standard_omega(int dim) {
  Form w(dim);
  for (int i = 0; i + 1 < dim; i += 2) w[(Mask{1} << i) | (Mask{1} << (i + 1))] = 1.0;
  return w;
}

Form standard_Omega() {
  Form out = Form::scalar(6, 1.0);
  for (int k = 0; k < 3; ++k) {
    Form theta(6);
    theta[Mask{1} << (2 * k)] = 1.0;
    theta[Mask{1} << (2 * k + 1)] = cplx(0, 1);
    out = wedge(out, theta);
  }
  return out;
}

Form symplectic_rho() {
  const Form w = standard_omega(6);
  return Form::scalar(6, 2.0) - wedge(w, w);
}

Form calabi_yau_rho() {
  const Form om = standard_Omega();
  return om + om.conj();
}

Form split_rho() { return Form::scalar(6, 1.0) + Form::volume(6); }

double normal(Rng& rng, double sd) { return std::normal_distribution<double>(0.0, sd)(rng); }

cplx complex_normal(Rng& rng, double sd) {
  const double re = normal(rng, sd);
  return {re, normal(rng, sd)};
}

Form random_form(Rng& rng, int dim, double sd) {
  Form f(dim);
  for (Mask s = 0; s < f.size(); ++s) f[s] = complex_normal(rng, sd);
  return f;
}

Form random_real_form(Rng& rng, int dim, double sd) {
  Form f(dim);
  for (Mask s = 0; s < f.size(); ++s) f[s] = normal(rng, sd);
  return f;
}

Form random_parity_form(Rng& rng, int dim, Parity p, bool real, double sd) {
  Form f(dim);
  for (Mask s : parity_masks(dim, p)) f[s] = real ? cplx(normal(rng, sd)) : complex_normal(rng, sd);
  return f;
}

Form random_two_form(Rng& rng, int dim, bool real, double sd) {
  Form f(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      f[(Mask{1} << i) | (Mask{1} << j)] = real ? cplx(normal(rng, sd)) : complex_normal(rng, sd);
  return f;
}

VecCovec random_veccovec(Rng& rng, int dim, bool real, double sd) {
  VecCovec x(dim);
  for (int i = 0; i < dim; ++i) {
    x.v[i] = real ? cplx(normal(rng, sd)) : complex_normal(rng, sd);
    x.xi[i] = real ? cplx(normal(rng, sd)) : complex_normal(rng, sd);
  }
  return x;
}

SoElement random_so(Rng& rng, int dim, bool real, double sd) {
  auto draw = [&] { return real ? cplx(normal(rng, sd)) : complex_normal(rng, sd); };
  SoElement a(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a.endo(i, j) = draw();
  a.two_form = random_two_form(rng, dim, real, sd);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      a.bivector(i, j) = draw();
      a.bivector(j, i) = -a.bivector(i, j);
    }
  return a;
}

namespace {

// Pull back a form by a linear map g (dx^i -> sum_j g_ij dx^j), degree-2 only.
Form pull_two_form(const Form& w, const MatR& g) {
  const int n = w.dim();
  Form out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cplx c = w[(Mask{1} << i) | (Mask{1} << j)];
      if (c == cplx{}) continue;
      Form a(n), b(n);
      for (int k = 0; k < n; ++k) {
        a[Mask{1} << k] = g(i, k);
        b[Mask{1} << k] = g(j, k);
      }
      out += wedge(a, b) * c;
    }
  return out;
}

MatR near_identity(Rng& rng, int n, double sd) {
  MatR g = MatR::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) += normal(rng, sd);
  return g;
}

}  // namespace

Form random_symplectic_form(Rng& rng, int dim) {
  return pull_two_form(standard_omega(dim), near_identity(rng, dim, 0.3));
}

Form random_stable_even(Rng& rng, double so_scale) {
  const Form w = random_symplectic_form(rng, 6);
  Form rho = Form::scalar(6, 2.0) - wedge(w, w);
  rho = exp_bfield(random_two_form(rng, 6, true, 0.5), rho);
  return exp_so(random_so(rng, 6, true, so_scale), rho).real();
}

Form random_stable_odd(Rng& rng, double so_scale) {
  const MatR g = near_identity(rng, 6, 0.3);
  Form om = Form::scalar(6, 1.0);
  for (int k = 0; k < 3; ++k) {
    Form theta(6);
    for (int j = 0; j < 6; ++j) theta[Mask{1} << j] = cplx(g(2 * k, j), g(2 * k + 1, j));
    om = wedge(om, theta);
  }
  Form rho = om + om.conj();
  rho = exp_bfield(random_two_form(rng, 6, true, 0.5), rho);
  return exp_so(random_so(rng, 6, true, so_scale), rho).real();
}

}  // namespace gcy
