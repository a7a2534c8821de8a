#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gcy/fixtures.hpp"
#include "gcy/quartic.hpp"
#include "gcy/variational.hpp"
#include "oracles.hpp"

using namespace gcy;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Form dx(int dim, std::initializer_list<int> idx) {
  Mask s = 0;
  for (int i : idx) s |= Mask{1} << (i - 1);
  return Form::basis(dim, s);
}

// Real random field with Gaussian amplitudes on every band mode.
GridForm random_field(const TorusGrid& g, Parity p, std::uint64_t seed, double sd = 1.0) {
  Rng rng(seed);
  Spectrum s(g, p);
  const int nc = g.num_channels();
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const std::size_t n = g.negated_mode(m);
    if (n < m) continue;
    for (int c = 0; c < nc; ++c) {
      const cplx a = n == m ? cplx(normal(rng, sd), 0) : complex_normal(rng, sd);
      s.mode_data(m)[c] = a;
      s.mode_data(n)[c] = std::conj(a);
    }
  }
  return synthesize(s);
}

double max_diff(const GridForm& a, const GridForm& b) { return (a - b).max_abs(); }

GridForm flat(int n, int k, const Form& f) { return GridForm::constant(TorusGrid(6, n, k), f); }

}  // namespace

TEST_CASE("grid construction rejects bad parameters") {
  CHECK_THROWS_AS(TorusGrid(3, 8, 1), DimensionError);
  CHECK_THROWS_AS(TorusGrid(6, 5, 1), DomainError);
  CHECK_THROWS_AS(TorusGrid(6, 2, 0), DomainError);
  CHECK_THROWS_AS(TorusGrid(6, 8, 4), DomainError);
  CHECK_THROWS_AS(TorusGrid(6, 8, -1), DomainError);
  const TorusGrid g(4, 6, 2);
  CHECK(g.num_points() == 1296);
  CHECK(g.num_channels() == 8);
  CHECK(g.num_modes() == 625);
  CHECK(g.total_volume() == doctest::Approx(std::pow(kTwoPi, 4)));
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    auto k = g.mode(m);
    CHECK(g.mode_index(k) == m);
    for (int& x : k) x = -x;
    CHECK(g.mode_index(k) == g.negated_mode(m));
  }
  CHECK_THROWS_AS(g.mode_index({3, 0, 0, 0}), DomainError);
}

TEST_CASE("grid forms reject complex values, wrong parity and mismatched grids") {
  const TorusGrid g(2, 8, 2);
  GridForm a(g, Parity::Even);
  CHECK_THROWS_AS(a.set(0, dx(2, {1})), DomainError);
  Form c = Form::scalar(2, cplx(1, 1));
  CHECK_THROWS_AS(a.set(0, c), DomainError);
  const GridForm b(TorusGrid(2, 8, 1), Parity::Even);
  CHECK_THROWS_AS(a += b, DimensionError);
}

TEST_CASE("spectral d on worked examples") {
  const TorusGrid g(2, 8, 2);
  const GridForm c = GridForm::constant(g, Form::scalar(2, 3.0) + dx(2, {1, 2}));
  CHECK(spectral_d(c).max_abs() < 1e-14);

  const GridForm a = GridForm::sample(g, Parity::Odd, [](std::span<const double> x) { return std::sin(x[0]) * dx(2, {2}); });
  const GridForm expect =
      GridForm::sample(g, Parity::Even, [](std::span<const double> x) { return std::cos(x[0]) * dx(2, {1, 2}); });
  CHECK(max_diff(spectral_d(a), expect) < 1e-14);
}

TEST_CASE("spectral d squares to zero") {
  for (int dim : {2, 4, 6}) {
    const TorusGrid g(dim, dim == 6 ? 4 : 8, dim == 6 ? 1 : 3);
    for (Parity p : {Parity::Even, Parity::Odd}) {
      const GridForm a = random_field(g, p, 11 + static_cast<std::uint64_t>(dim));
      CHECK(spectral_d(spectral_d(a)).max_abs() < 1e-12 * std::max(1.0, a.max_abs()));
    }
  }
}

TEST_CASE("integration by parts holds exactly for one resolved sign") {
  const TorusGrid g(6, 4, 1);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const GridForm beta = random_field(g, Parity::Even, seed);
    const GridForm alpha = random_field(g, Parity::Odd, seed + 100);
    const double a = integrate_mukai(beta, spectral_d(alpha));
    const double b = integrate_mukai(spectral_d(beta), alpha);
    const double scale = std::abs(a) + std::abs(b);
    REQUIRE(scale > 1.0);
    // sigma(d beta) = d sigma(beta) on even forms, so d(sigma beta ^ alpha) gives a + b = 0
    CHECK(std::abs(a + b) < 1e-12 * scale);
    CHECK(std::abs(a - b) > 1e-3 * scale);
  }
}

TEST_CASE("hodge projection: constants, exact forms, random forms") {
  const TorusGrid g(4, 8, 2);
  const Form cf = Form::scalar(4, 1.5) + dx(4, {1, 3}) - 2.0 * dx(4, {2, 3});
  const GridForm c = GridForm::constant(g, cf);
  HodgeParts hc = hodge_project(c);
  CHECK(max_diff(hc.harmonic, c) < 1e-13);
  CHECK(hc.d_part.max_abs() < 1e-13);
  CHECK(hc.dstar_part.max_abs() < 1e-13);

  const GridForm ex = spectral_d(random_field(g, Parity::Odd, 5));
  HodgeParts he = hodge_project(ex);
  CHECK(he.harmonic.max_abs() < 1e-12);
  CHECK(max_diff(he.d_part, ex) < 1e-12);
  CHECK(he.dstar_part.max_abs() < 1e-12);

  for (Parity p : {Parity::Even, Parity::Odd}) {
    const GridForm a = random_field(g, p, 9);
    const HodgeParts h = hodge_project(a);
    const double n2 = l2_inner(a, a);
    CHECK(std::abs(l2_inner(h.harmonic, h.d_part)) < 1e-12 * n2);
    CHECK(std::abs(l2_inner(h.harmonic, h.dstar_part)) < 1e-12 * n2);
    CHECK(std::abs(l2_inner(h.d_part, h.dstar_part)) < 1e-12 * n2);
    CHECK(max_diff(h.harmonic + h.d_part + h.dstar_part, a) < 1e-12 * a.max_abs());
    CHECK(l2_norm(h.d_part) > 0.1 * l2_norm(a));
    CHECK(l2_norm(h.dstar_part) > 0.1 * l2_norm(a));
  }
}

TEST_CASE("twisted differential") {
  const TorusGrid g(4, 16, 6);
  const GridForm zero(g, Parity::Odd);
  const GridForm a = random_field(TorusGrid(4, 16, 2), Parity::Even, 3);
  GridForm a6(g, Parity::Even);
  a6.values() = a.values();
  CHECK(max_diff(d_H(a6, zero), spectral_d(a6)) == 0.0);

  // B = sin(x1) dx2^dx3, H = -dB = -cos(x1) dx1^dx2^dx3
  const GridForm b = GridForm::sample(g, Parity::Even, [](std::span<const double> x) {
    return std::sin(x[0]) * dx(4, {2, 3});
  });
  const GridForm h = -1.0 * spectral_d(b);
  const GridForm eb = GridForm::constant(g, Form::scalar(4, 1.0)) + b;  // B ^ B = 0
  const GridForm emb = GridForm::constant(g, Form::scalar(4, 1.0)) - b;

  CHECK(d_H(d_H(a6, h), h).max_abs() < 1e-12 * a6.max_abs());
  const GridForm odd = random_field(TorusGrid(4, 16, 2), Parity::Odd, 4);
  GridForm odd6(g, Parity::Odd);
  odd6.values() = odd.values();
  CHECK(d_H(d_H(odd6, h), h).max_abs() < 1e-12 * odd6.max_abs());

  // e^B d(e^{-B} alpha) = d_{-dB} alpha
  const GridForm lhs = wedge(eb, spectral_d(wedge(emb, a6)));
  CHECK(max_diff(lhs, d_H(a6, h)) < 1e-10 * a6.max_abs());
  // and d_H(e^B alpha) = e^B d alpha
  CHECK(max_diff(d_H(wedge(eb, a6), h), wedge(eb, spectral_d(a6))) < 1e-10 * a6.max_abs());

  CHECK_THROWS_AS(d_H(a6, b), DomainError);  // wrong parity
  const GridForm open = GridForm::sample(g, Parity::Odd, [](std::span<const double> x) {
    return std::sin(x[3]) * dx(4, {1, 2, 3});
  });
  CHECK_THROWS_AS(d_H(a6, open), DomainError);  // not closed
  const GridForm one = GridForm::sample(g, Parity::Odd, [](std::span<const double>) { return dx(4, {1}); });
  CHECK_THROWS_AS(d_H(a6, one), DomainError);  // not degree 3
}

TEST_CASE("volume functional on constant fields") {
  const double torus = std::pow(kTwoPi, 6);
  CHECK(volume_functional(flat(4, 1, symplectic_rho())) == doctest::Approx(8.0 * torus).epsilon(1e-13));

  const Form cy = calabi_yau_rho();
  const double phi_cy = std::sqrt(-quartic_q(cy).real() / 3.0);
  CHECK(volume_functional(flat(4, 1, cy)) == doctest::Approx(phi_cy * torus).epsilon(1e-13));

  const TorusGrid g(6, 4, 1);
  GridForm rho = GridForm::constant(g, symplectic_rho()) + random_exact_perturbation(g, Parity::Even, 0.2, 3);
  const double v = volume_functional(rho);
  for (double t : {0.5, 2.0, 3.0})
    CHECK(volume_functional(t * rho) == doctest::Approx(t * t * v).epsilon(1e-12));
}

TEST_CASE("threaded and serial kernels agree") {
  const TorusGrid g(6, 4, 1);
  for (const Form& base : {symplectic_rho(), calabi_yau_rho()}) {
    const GridForm rho = GridForm::constant(g, base) +
                         random_exact_perturbation(g, *base.parity(), 0.1, 17);
    const HatField a = hat_field(rho, Kernel::Omp);
    const HatField b = hat_field(rho, Kernel::Serial);
    for (std::size_t p = 0; p < g.num_points(); ++p) CHECK(a.phi[p] == doctest::Approx(b.phi[p]).epsilon(1e-13));
    CHECK(max_diff(a.rho_hat, b.rho_hat) < 1e-12);
    const GridForm w = random_field(g, rho.parity(), 23);
    CHECK(max_diff(apply_j(rho, w, Kernel::Omp), apply_j(rho, w, Kernel::Serial)) < 1e-11 * w.max_abs());
  }
}

TEST_CASE("pointwise kernels match the single-form routines") {
  const TorusGrid g(6, 4, 1);
  const GridForm rho = GridForm::constant(g, symplectic_rho()) + random_exact_perturbation(g, Parity::Even, 0.3, 2);
  const GridForm w = random_field(g, Parity::Even, 8);
  const HatField h = hat_field(rho);
  const GridForm jw = apply_j(rho, w);
  for (std::size_t p : {std::size_t{0}, std::size_t{777}, g.num_points() - 1}) {
    CHECK(h.phi[p] == doctest::Approx(hitchin_phi(rho.at(p))).epsilon(1e-12));
    CHECK(oracle::max_diff(h.rho_hat.at(p), rho_hat(rho.at(p))) < 1e-12);
    CHECK(oracle::max_diff(jw.at(p), rho_hat_derivative(rho.at(p), w.at(p))) < 1e-10);
  }
}

TEST_CASE("unstable points are named") {
  const TorusGrid g(6, 4, 1);
  GridForm rho = GridForm::constant(g, symplectic_rho());
  rho.set(37, split_rho());
  try {
    (void)hat_field(rho);
    FAIL("expected a StabilityError");
  } catch (const StabilityError& e) {
    CHECK(e.point() == 37);
    CHECK(std::string(e.what()).find("point 37") != std::string::npos);
  }
  CHECK_THROWS_AS(hat_field(rho, Kernel::Serial), StabilityError);
  CHECK_THROWS_AS(volume_functional(rho), StabilityError);
}

TEST_CASE("flow modes round-trip through strings") {
  for (FlowMode m : {FlowMode::Residual, FlowMode::Ascent, FlowMode::Descent})
    CHECK(flow_mode_from_string(to_string(m)) == m);
  CHECK_FALSE(flow_mode_from_string("sideways").has_value());
}

TEST_CASE("flow at a constant critical point stops immediately") {
  const FlowReport r = flow(flat(4, 1, symplectic_rho()));
  CHECK(r.converged);
  CHECK(r.iterations <= 1);
  CHECK(r.final_residual < 1e-10);
  CHECK(r.final_volume == doctest::Approx(8.0 * std::pow(kTwoPi, 6)).epsilon(1e-13));
  CHECK(r.tags_constant);
  CHECK(r.tag_counts().at("SymplecticBTransform") == 4096);
}

TEST_CASE("flow rejects data that is not closed or not band-limited") {
  const TorusGrid g(6, 4, 1);
  const GridForm open = GridForm::sample(g, Parity::Even, [](std::span<const double> x) {
    return symplectic_rho() + 0.01 * std::sin(x[0]) * dx(6, {2, 3});
  });
  CHECK_THROWS_AS(flow(open), DomainError);
  GridForm spiky = GridForm::constant(g, symplectic_rho());
  spiky.point_data(5)[0] += 0.01;
  CHECK_THROWS_AS(flow(spiky), DomainError);
}

TEST_CASE("residual flow from a perturbed symplectic form") {
  const TorusGrid g(6, 4, 1);
  const GridForm rho0 = GridForm::constant(g, symplectic_rho()) + random_exact_perturbation(g, Parity::Even, 0.01, 1);
  FlowConfig cfg;
  cfg.max_iter = 6;
  const FlowReport r = flow(rho0, cfg);
  REQUIRE(r.history.size() >= 3);
  CHECK(r.history.front().residual > 1.0);
  CHECK(r.final_residual < 1e-5);
  CHECK(r.max_drift < 1e-10);
  CHECK(r.max_closedness < 1e-10);
  CHECK(r.final_volume == doctest::Approx(8.0 * std::pow(kTwoPi, 6)).epsilon(1e-9));
  for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i].residual < r.history[i - 1].residual * 1.5);
  CHECK(r.tags_constant);
  CHECK(r.tags.front() == TypeTag::SymplecticBTransform);
  REQUIRE(r.final_rho);
  const HodgeParts h = hodge_project(*r.final_rho);
  CHECK(max_diff(h.harmonic, GridForm::constant(g, symplectic_rho())) < 1e-12);
}

TEST_CASE("ascent and descent modes keep V monotone") {
  const TorusGrid g(6, 4, 1);
  const GridForm rho0 = GridForm::constant(g, symplectic_rho()) + random_exact_perturbation(g, Parity::Even, 0.05, 4);
  for (FlowMode m : {FlowMode::Ascent, FlowMode::Descent}) {
    FlowConfig cfg;
    cfg.mode = m;
    cfg.max_iter = 4;
    cfg.classify = false;
    const FlowReport r = flow(rho0, cfg);
    CHECK(r.monotone);
    for (std::size_t i = 1; i < r.history.size(); ++i) {
      if (m == FlowMode::Ascent)
        CHECK(r.history[i].volume >= r.history[i - 1].volume);
      else
        CHECK(r.history[i].volume <= r.history[i - 1].volume);
    }
    CHECK(r.max_drift < 1e-10);
  }
}

TEST_CASE("twisted flow with H = 0 reproduces flow exactly") {
  const TorusGrid g(6, 4, 1);
  const GridForm rho0 = GridForm::constant(g, symplectic_rho()) + random_exact_perturbation(g, Parity::Even, 0.01, 9);
  FlowConfig cfg;
  cfg.max_iter = 3;
  const FlowReport a = flow(rho0, cfg);
  const FlowReport b = twisted_flow(rho0, GridForm(g, Parity::Odd), cfg);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    CHECK(a.history[i].volume == b.history[i].volume);
    CHECK(a.history[i].residual == b.history[i].residual);
    CHECK(a.history[i].step == b.history[i].step);
  }
  CHECK(a.final_rho->values() == b.final_rho->values());
  CHECK(b.twisted);
}

TEST_CASE("twisted flow with a constant three-form") {
  const TorusGrid g(6, 4, 1);
  // H = Re(dz1 ^ dz2 ^ conj dz3) annihilates Omega and its conjugate
  auto dz = [](int k, bool bar) { return dx(6, {2 * k - 1}) + cplx(0, bar ? -1 : 1) * dx(6, {2 * k}); };
  const Form hc = wedge(dz(1, false), wedge(dz(2, false), dz(3, true)));
  const Form hform = 0.3 * (0.5 * (hc + hc.conj()));
  const GridForm h = GridForm::constant(g, hform);

  SUBCASE("constant data that is not d_H-closed is reported") {
    CHECK_THROWS_AS(twisted_flow(flat(4, 1, symplectic_rho()), h), DomainError);
  }
  SUBCASE("d_H-exact perturbation of a twisted critical point") {
    GridForm rho0 = GridForm::constant(g, calabi_yau_rho());
    CHECK(d_H(rho0, h).max_abs() < 1e-14);
    CHECK(d_H(hat_field(rho0).rho_hat, h).max_abs() < 1e-14);
    GridForm pert = d_H(random_field(g, Parity::Even, 12), h);
    pert *= 0.01 / pert.max_abs();
    rho0 += pert;
    FlowConfig cfg;
    cfg.max_iter = 6;
    const FlowReport r = twisted_flow(rho0, h, cfg);
    CHECK(r.twisted);
    CHECK(r.max_drift < 1e-9);
    CHECK(r.max_closedness < 1e-10);
    CHECK(r.final_residual < 1e-4 * r.history.front().residual);
    CHECK(r.tags_constant);
  }
  SUBCASE("non-constant H is refused") {
    const GridForm hv = GridForm::sample(g, Parity::Odd, [](std::span<const double> x) {
      return std::cos(x[1]) * dx(6, {1, 3, 5});
    });
    CHECK_THROWS_AS(twisted_flow(flat(4, 1, calabi_yau_rho()), hv), DomainError);
  }
}

TEST_CASE("second variation at the flat symplectic point") {
  const TorusGrid g(6, 4, 1);
  const GridForm rho = GridForm::constant(g, symplectic_rho());
  const GridForm a1 = random_exact_perturbation(g, Parity::Even, 1.0, 31);
  const GridForm a2 = random_exact_perturbation(g, Parity::Even, 1.0, 32);
  const double h12 = hessian_form(rho, a1, a2);
  const double h21 = hessian_form(rho, a2, a1);
  CHECK(std::abs(h12 - h21) < 1e-9 * std::max(1.0, std::abs(h12)));

  SUBCASE("orbit directions are null") {
    VectorField x(6);
    x[0] = TrigPoly::cos_mode(6, 1);
    x[3] = 0.5 * TrigPoly::sin_mode(6, 2);
    FormField xi = FormField::basis(Mask{1} << 4, TrigPoly::sin_mode(6, 0)) +
                   FormField::basis(Mask{1} << 1, -1.0 * TrigPoly::cos_mode(6, 5));
    const GridForm orbit = orbit_tangent(rho, x, xi);
    REQUIRE(orbit.max_abs() > 0.1);
    for (const GridForm* a : {&a1, &a2}) CHECK(std::abs(hessian_form(rho, *a, orbit)) < 1e-8);
  }
  SUBCASE("agrees with finite differences of V") {
    const double h = 1e-3;
    auto v = [&](double s, double t) { return volume_functional(rho + s * a1 + t * a2); };
    const double mixed = (v(h, h) - v(h, -h) - v(-h, h) + v(-h, -h)) / (4 * h * h);
    const double diag = (v(h, 0) - 2 * v(0, 0) + v(-h, 0)) / (h * h);
    const double h11 = hessian_form(rho, a1, a1);
    const double scale = std::abs(h11) + std::abs(h12);
    CHECK(std::abs(mixed - h12) < 1e-4 * scale);
    CHECK(std::abs(diag - h11) < 1e-4 * scale);
  }
  SUBCASE("non-exact directions and non-critical points are refused") {
    CHECK_THROWS_AS(hessian_form(rho, GridForm::constant(g, symplectic_rho()), a2), DomainError);
    CHECK_THROWS_AS(hessian_form(rho + 0.05 * a1, a1, a2), DomainError);
  }
}

TEST_CASE("J of tangents to a curve of critical points is closed") {
  // rho(t) = e^{tB}(rho0 + t c), B = sin(x1) dx1^dx2 closed, c constant
  const TorusGrid g(6, 4, 1);
  const Form r0 = symplectic_rho();
  const Form c = dx(6, {1, 3}) - 0.5 * dx(6, {2, 5});
  auto curve = [&](double t) {
    return GridForm::sample(g, Parity::Even, [&](std::span<const double> x) {
      const Form b = t * std::sin(x[0]) * dx(6, {1, 2});
      const Form base = r0 + t * c;
      return base + wedge(b, base);
    });
  };
  const double t = 1e-3;
  const GridForm r1 = curve(0.0), r2 = curve(t), mid = curve(0.5 * t);
  CHECK(criticality_residual(r2) < 1e-10);
  CHECK(criticality_residual(mid) < 1e-10);
  const GridForm tangent = (1.0 / t) * (r2 - r1);
  const GridForm jt = apply_j(mid, tangent);
  CHECK(l2_norm(spectral_d(jt)) < 1e-6 * l2_norm(jt));
  // a generic exact direction is not annihilated
  const GridForm generic = apply_j(mid, random_exact_perturbation(g, Parity::Even, 1.0, 3));
  CHECK(l2_norm(spectral_d(generic)) > 1e-2 * l2_norm(generic));
}

TEST_CASE("dd^J truncation check at flat points") {
  SUBCASE("symplectic and complex torus") {
    for (const Form& f : {symplectic_rho(), calabi_yau_rho()}) {
      const DdjReport r = ddj_check(flat(4, 1, f), 1);
      CHECK(r.per_mode);
      CHECK(r.modes == 728);
      CHECK(r.kernel_dim > 0);
      CHECK(r.kernel_in_image);
      CHECK(r.image_dim >= r.kernel_dim);
    }
  }
  SUBCASE("constant B-field transforms give the same result") {
    Rng rng(5);
    for (const Form& f : {symplectic_rho(), calabi_yau_rho()}) {
      const DdjReport a = ddj_check(flat(4, 1, f), 1);
      const Form fb = wedge_exp(random_two_form(rng, 6, true, 0.5), f);
      const DdjReport b = ddj_check(flat(4, 1, fb), 1);
      CHECK(a.kernel_dim == b.kernel_dim);
      CHECK(a.image_dim == b.image_dim);
      CHECK(a.exact_dim == b.exact_dim);
      CHECK(b.kernel_in_image);
    }
  }
  SUBCASE("dense assembly agrees with the per-mode blocks") {
    DdjOptions opt;
    opt.active_axes = {true, false, true, false, false, false};
    const DdjReport pm = ddj_check(flat(4, 1, symplectic_rho()), 1, opt);
    opt.force_dense = true;
    const DdjReport dn = ddj_check(flat(4, 1, symplectic_rho()), 1, opt);
    CHECK_FALSE(dn.per_mode);
    CHECK(dn.modes == pm.modes);
    CHECK(dn.exact_dim == pm.exact_dim);
    CHECK(dn.kernel_dim == pm.kernel_dim);
    CHECK(dn.kernel_in_image == pm.kernel_in_image);
  }
  SUBCASE("guards") {
    DdjOptions opt;
    opt.force_dense = true;
    opt.max_dense_dim = 100;
    CHECK_THROWS_AS(ddj_check(flat(4, 1, symplectic_rho()), 1, opt), ResourceError);
    const TorusGrid g(6, 4, 1);
    const GridForm off = GridForm::constant(g, symplectic_rho()) + random_exact_perturbation(g, Parity::Even, 0.05, 1);
    CHECK_THROWS_AS(ddj_check(off, 1), DomainError);
    CHECK_THROWS_AS(ddj_check(flat(4, 1, symplectic_rho()), 0), DomainError);
  }
}

TEST_CASE("presets") {
  CHECK(oracle::max_diff(preset_form("calabi-yau"), calabi_yau_rho()) == 0.0);
  CHECK_THROWS_AS(preset_form("hyperkahler"), DomainError);
  FlowProblem p;
  p.points = 4;
  p.cutoff = 1;
  p.perturbation = 0.02;
  const GridForm a = initial_data(p), b = initial_data(p);
  CHECK(a.values() == b.values());
  CHECK(max_diff(a, GridForm::constant(a.grid(), symplectic_rho())) == doctest::Approx(0.02));
  CHECK(spectral_d(a).max_abs() < 1e-12);
}
