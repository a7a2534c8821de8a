#include <doctest.h>

#include <numbers>

#include "gcy/courant.hpp"
#include "gcy/fixtures.hpp"

using namespace gcy;

namespace {

std::vector<double> random_point(Rng& rng, int n) {
  std::uniform_real_distribution<double> ud(0.0, 2.0 * std::numbers::pi);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& c : x) c = ud(rng);
  return x;
}

double field_diff(const FormField& a, const FormField& b) { return (a - b).max_abs(); }
double section_diff(const SectionField& a, const SectionField& b) { return (a - b).max_abs(); }

// Coordinate p = 1 bracket at a point with derivatives by central differences.
VecC fd_bracket(const SectionField& s1, const SectionField& s2, std::vector<double> x) {
  const int n = s1.dim();
  const double h = 1e-5;
  auto stacked = [&](const SectionField& s, const std::vector<double>& p) {
    VecC v(2 * n);
    const Vector X = s.vec(p);
    const Form f = s.form(p);
    for (int i = 0; i < n; ++i) {
      v(i) = X[i];
      v(n + i) = f[Mask{1} << i];
    }
    return v;
  };
  const VecC a = stacked(s1, x), b = stacked(s2, x);
  std::vector<VecC> da, db;
  for (int j = 0; j < n; ++j) {
    auto xp = x, xm = x;
    xp[static_cast<std::size_t>(j)] += h;
    xm[static_cast<std::size_t>(j)] -= h;
    da.push_back((stacked(s1, xp) - stacked(s1, xm)) / (2 * h));
    db.push_back((stacked(s2, xp) - stacked(s2, xm)) / (2 * h));
  }
  VecC out = VecC::Zero(2 * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      out(j) += a(i) * db[ui](j) - b(i) * da[ui](j);
      // L_X eta - L_Y xi - 1/2 d(i_X eta - i_Y xi)
      out(n + j) += a(i) * db[ui](n + j) + b(n + i) * da[uj](i);
      out(n + j) -= b(i) * da[ui](n + j) + a(n + i) * db[uj](i);
      out(n + j) -= 0.5 * (da[uj](i) * b(n + i) + a(i) * db[uj](n + i) - db[uj](i) * a(n + i) - b(i) * da[uj](n + i));
    }
  return out;
}

// <X + xi, Y + eta> = 1/2 (xi(Y) + eta(X)) as a scalar field, p = 1.
TrigPoly pairing_field(const SectionField& a, const SectionField& b) {
  TrigPoly out(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    out += a.form.component(Mask{1} << i) * b.vec[i];
    out += b.form.component(Mask{1} << i) * a.vec[i];
  }
  return out * 0.5;
}

}  // namespace

TEST_CASE("trig poly basics") {
  const int n = 3;
  Rng rng(1);
  const TrigPoly s = TrigPoly::sin_mode(n, 0), c = TrigPoly::cos_mode(n, 0);
  const auto x = random_point(rng, n);
  CHECK(std::abs(s(x) - std::sin(x[0])) < 1e-15);
  CHECK(std::abs(c(x) - std::cos(x[0])) < 1e-15);
  CHECK(s.is_real());
  CHECK(s.is_periodic());
  CHECK_FALSE(TrigPoly::coordinate(n, 1).is_periodic());
  CHECK_FALSE(TrigPoly::term(n, {1, 0, 0}, 1.0).is_real());
  CHECK((s.derivative(0) - c).is_zero(1e-16));
  CHECK((s * s + c * c - TrigPoly::constant(n, 1.0)).is_zero(1e-16));

  for (int trial = 0; trial < 20; ++trial) {
    const TrigPoly f = random_trig_poly(rng, n, 2, 3, false);
    const TrigPoly g = random_trig_poly(rng, n, 2, 3, false) * TrigPoly::coordinate(n, trial % n);
    const auto p = random_point(rng, n);
    CHECK(std::abs((f * g)(p) - f(p) * g(p)) < 1e-10);
    CHECK(std::abs(f(p).imag()) < 1e-12);
    auto pp = p, pm = p;
    pp[1] += 1e-5;
    pm[1] -= 1e-5;
    CHECK(std::abs(g.derivative(1)(p) - (g(pp) - g(pm)) / 2e-5) < 1e-6 * (1 + g.max_abs()));
  }
  CHECK_THROWS_AS(TrigPoly::term(n, {1, 0}, 1.0), DimensionError);
}

TEST_CASE("exterior d on coefficient fields") {
  const int n = 3;
  // d(sin x1) = cos x1 dx1
  const FormField ds = exterior_d(FormField::scalar(TrigPoly::sin_mode(n, 0)));
  CHECK(field_diff(ds, FormField::basis(0b001, TrigPoly::cos_mode(n, 0))) == 0.0);
  // d(e^{i x1} dx2) = i e^{i x1} dx1^dx2
  const FormField de = exterior_d(FormField::basis(0b010, TrigPoly::term(n, {1, 0, 0}, 1.0)));
  CHECK(field_diff(de, FormField::basis(0b011, TrigPoly::term(n, {1, 0, 0}, cplx(0, 1)))) == 0.0);
  CHECK(exterior_d(FormField::constant(Form::volume(n) + Form::scalar(n, 2.0))).is_zero());

  Rng rng(2);
  for (int deg = 0; deg <= 2; ++deg) {
    const FormField a = random_form_field(rng, 4, deg, 2, 2, false);
    CHECK(exterior_d(exterior_d(a)).max_abs() < 1e-12);
    CHECK(is_closed(exterior_d(a)));
    if (deg < 2) CHECK_FALSE(is_closed(a));
  }
  // pointwise agreement of L_X = d i_X + i_X d with a derivative of the flow-free formula on functions
  const VectorField x = VectorField::coordinate(n, 2);
  const TrigPoly f = random_trig_poly(rng, n, 1, 3, false);
  CHECK(field_diff(lie_derivative(x, FormField::scalar(f)), FormField::scalar(f.derivative(2))) < 1e-14);
}

TEST_CASE("courant bracket hand examples") {
  const int n = 3;
  // p = 1, X = d1, xi = x2 dx3, Y = d2, eta = 0 -> -dx3
  const SectionField s1(VectorField::coordinate(n, 0), FormField::basis(0b100, TrigPoly::coordinate(n, 1)), 1);
  const SectionField s2(VectorField::coordinate(n, 1), FormField(n), 1);
  const SectionField b = courant_bracket(s1, s2);
  CHECK(b.vec.is_zero());
  CHECK(field_diff(b.form, FormField::constant(Form::basis(n, 0b100, -1.0))) == 0.0);

  // p = 0, X = d1, f = 0, Y = 0, g = sin x1 -> cos x1
  const SectionField t1(VectorField::coordinate(n, 0), FormField(n), 0);
  const SectionField t2(VectorField(n), FormField::scalar(TrigPoly::sin_mode(n, 0)), 0);
  const SectionField bt = courant_bracket(t1, t2);
  CHECK(bt.vec.is_zero());
  CHECK(field_diff(bt.form, FormField::scalar(TrigPoly::cos_mode(n, 0))) == 0.0);

  CHECK_THROWS_AS(courant_bracket(s1, t2), DomainError);
  CHECK_THROWS_AS(SectionField(VectorField(n), FormField::constant(Form::basis(n, 0b011)), 1), DomainError);
}

TEST_CASE("courant bracket properties") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3;
    const SectionField a = random_section(rng, n, 1, 1, 2, false);
    const SectionField b = random_section(rng, n, 1, 1, 2, false);
    CHECK(courant_bracket(a, a).max_abs() < 1e-12);
    const SectionField ab = courant_bracket(a, b), ba = courant_bracket(b, a);
    CHECK((ab + ba).max_abs() < 1e-12);
    // pointwise agreement with finite differences of the evaluated sections
    const auto x = random_point(rng, n);
    const VecC fd = fd_bracket(a, b, x);
    const Vector z = ab.vec(x);
    const Form zeta = ab.form(x);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      err = std::max(err, std::abs(z[i] - fd(i)));
      err = std::max(err, std::abs(zeta[Mask{1} << i] - fd(n + i)));
    }
    CHECK(err < 1e-6);
  }
  // p = 0: [X + f, Y + g] = [X, Y] + X g - Y f
  for (int trial = 0; trial < 5; ++trial) {
    const SectionField a = random_section(rng, 3, 0, 1, 2);
    const SectionField b = random_section(rng, 3, 0, 1, 2);
    const SectionField br = courant_bracket(a, b);
    CHECK((br.vec - lie_bracket(a.vec, b.vec)).max_abs() == 0.0);
    const TrigPoly expect = a.vec.apply(b.form.component(0)) - b.vec.apply(a.form.component(0));
    CHECK(field_diff(br.form, FormField::scalar(expect)) == 0.0);
  }
}

TEST_CASE("courant term extraction for closed forms") {
  Rng rng(4);
  const int n = 3;
  for (int trial = 0; trial < 5; ++trial) {
    VectorField x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = random_trig_poly(rng, n, 1, 2);
      y[i] = random_trig_poly(rng, n, 1, 2);
    }
    const SectionField s1(x, random_closed_form_field(rng, n, 1, 1, 2), 1);
    const SectionField s2(y, random_closed_form_field(rng, n, 1, 1, 2), 1);
    const CourantTerms t = courant_terms(s1, s2);
    CHECK(field_diff(t.lie_x_eta, exterior_d(contract(x, s2.form))) == 0.0);
    CHECK(field_diff(t.lie_y_xi, exterior_d(contract(y, s1.form))) == 0.0);
    CHECK(field_diff(t.exact, exterior_d(contract(x, s2.form) - contract(y, s1.form)) * 0.5) == 0.0);
    // closed inputs: the form part collapses to 1/2 d(i_X eta - i_Y xi)
    const SectionField br = courant_bracket(s1, s2);
    CHECK(field_diff(br.form, t.exact) < 1e-12);
    CHECK((br.vec - lie_bracket(x, y)).max_abs() == 0.0);
  }
}

TEST_CASE("B-field automorphisms") {
  Rng rng(5);
  const int n = 3;
  const SectionField s = random_section(rng, n, 1, 1, 2);
  CHECK(section_diff(bfield_automorphism(FormField(n), s), s) == 0.0);

  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const FormField alpha = random_closed_form_field(rng, n, 2, 1, 2);
    const SectionField a = random_section(rng, n, 1, 1, 2), b = random_section(rng, n, 1, 1, 2);
    const SectionField lhs = bfield_automorphism(alpha, courant_bracket(a, b));
    const SectionField rhs = courant_bracket(bfield_automorphism(alpha, a), bfield_automorphism(alpha, b));
    worst = std::max(worst, section_diff(lhs, rhs));
  }
  CHECK(worst == 0.0);

  // p = 0 with a closed 1-form and p = 2 with a closed 3-form on T^4
  for (int p : {0, 2}) {
    const FormField alpha = random_closed_form_field(rng, 4, p + 1, 1, 2);
    const SectionField a = random_section(rng, 4, p, 1, 1), b = random_section(rng, 4, p, 1, 1);
    const SectionField lhs = bfield_automorphism(alpha, courant_bracket(a, b));
    const SectionField rhs = courant_bracket(bfield_automorphism(alpha, a), bfield_automorphism(alpha, b));
    CHECK(section_diff(lhs, rhs) == 0.0);
  }

  // composition of exact B-fields
  const FormField g1 = random_form_field(rng, n, 1, 1, 2), g2 = random_form_field(rng, n, 1, 1, 2);
  const SectionField comp = bfield_automorphism(exterior_d(g1), bfield_automorphism(exterior_d(g2), s));
  CHECK(section_diff(comp, bfield_automorphism(exterior_d(g1 + g2), s)) == 0.0);

  // non-closed alpha: rejected, and the unchecked map breaks the identity
  const FormField bad = FormField::basis(0b110, TrigPoly::sin_mode(n, 0));
  CHECK_THROWS_AS(bfield_automorphism(bad, s), DomainError);
  const SectionField a(VectorField::coordinate(n, 1), FormField(n), 1);
  const SectionField b(VectorField::coordinate(n, 2), FormField(n), 1);
  const SectionField lhs = bfield_automorphism_unchecked(bad, courant_bracket(a, b));
  const SectionField rhs = courant_bracket(bfield_automorphism_unchecked(bad, a), bfield_automorphism_unchecked(bad, b));
  CHECK(section_diff(lhs, rhs) > 0.1);
  CHECK_THROWS_AS(bfield_automorphism(FormField::constant(Form::volume(n)), s), DomainError);
}

TEST_CASE("twisted bracket") {
  const int n = 3;
  Rng rng(6);
  const SectionField a = random_section(rng, n, 1, 1, 2), b = random_section(rng, n, 1, 1, 2);
  CHECK(section_diff(twisted_bracket(a, b, FormField(n)), courant_bracket(a, b)) == 0.0);

  const FormField h = FormField::constant(Form::volume(3));
  const SectionField x(VectorField::coordinate(n, 0), FormField(n), 1);
  const SectionField y(VectorField::coordinate(n, 1), FormField(n), 1);
  CHECK(field_diff(twisted_bracket(x, y, h).form, FormField::constant(Form::basis(n, 0b100, -1.0))) == 0.0);
  CHECK((twisted_bracket(a, b, h) + twisted_bracket(b, a, h)).max_abs() < 1e-12);

  CHECK_THROWS_AS(twisted_bracket(a, b, FormField::basis(0b011, TrigPoly::sin_mode(n, 2))), DomainError);
  const FormField h4 = FormField::basis(0b0111, TrigPoly::sin_mode(4, 3));
  const SectionField a4 = random_section(rng, 4, 1, 1, 1), b4 = random_section(rng, 4, 1, 1, 1);
  CHECK_THROWS_AS(twisted_bracket(a4, b4, h4), DomainError);
  const SectionField f0 = random_section(rng, n, 0, 1, 1);
  CHECK_THROWS_AS(twisted_bracket(f0, f0, h), DomainError);
}

TEST_CASE("jacobiator") {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const SectionField a = random_section(rng, 3, 0, 1, 2), b = random_section(rng, 3, 0, 1, 2),
                       c = random_section(rng, 3, 0, 1, 2);
    CHECK(jacobiator(a, b, c).max_abs() == 0.0);
  }
  // constant forms and constant vector fields
  Rng r2(8);
  const int n = 3;
  auto const_section = [&]() {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = complex_normal(r2);
    return SectionField(VectorField::constant(v), FormField::constant(random_form(r2, n).grade(1)), 1);
  };
  CHECK(jacobiator(const_section(), const_section(), const_section()).max_abs() == 0.0);

  const JacobiatorFixture fx = frozen_jacobiator_fixture();
  const SectionField jac = jacobiator(fx.s1, fx.s2, fx.s3);
  CHECK(jac.max_abs() > 0.05);
  CHECK(section_diff(jac, fx.expected) < 1e-15);

  // Jac = d T with T = 1/3 (<[a,b],c> + cyclic), checked on random p = 1 triples
  for (int trial = 0; trial < 5; ++trial) {
    const SectionField a = random_section(rng, 3, 1, 1, 1), b = random_section(rng, 3, 1, 1, 1),
                       c = random_section(rng, 3, 1, 1, 1);
    const TrigPoly t = (pairing_field(courant_bracket(a, b), c) + pairing_field(courant_bracket(b, c), a) +
                        pairing_field(courant_bracket(c, a), b)) * (1.0 / 3.0);
    const SectionField j = jacobiator(a, b, c);
    CHECK(j.vec.max_abs() < 1e-12);
    CHECK(field_diff(j.form, exterior_d(FormField::scalar(t))) < 1e-10);
  }
}

TEST_CASE("annihilator closure") {
  const Form w = standard_omega(6);
  const Form one = Form::scalar(6, 1.0);
  const FormField e_iw = FormField::constant(wedge_exp(w * cplx(0, 1), one));
  const ClosureReport r1 = annihilator_closure_check(e_iw, 8);
  CHECK(r1.closed);
  CHECK(r1.max_residual < 1e-10);
  const ClosureReport r2 = annihilator_closure_check(FormField::constant(standard_Omega()), 8);
  CHECK(r2.closed);
  CHECK(r2.max_residual < 1e-10);

  // closed but non-constant: a closed B-field transform of exp(i omega)
  const FormField b = FormField::basis(0b000011, TrigPoly::cos_mode(6, 0)) +
                      FormField::basis(0b001100, TrigPoly::sin_mode(6, 3));
  REQUIRE(is_closed(b));
  const ClosureReport r3 = annihilator_closure_check(wedge_exp(b, e_iw), 8);
  CHECK(r3.closed);
  CHECK(r3.max_residual < 1e-7);

  // control: exp(i (1 + sin(x1)/2) omega) is pure everywhere but not closed
  const TrigPoly f = TrigPoly::constant(6, 1.0) + TrigPoly::sin_mode(6, 0) * 0.5;
  const FormField iw = (f * FormField::constant(w)) * cplx(0, 1);
  const ClosureReport r4 = annihilator_closure_check(wedge_exp(iw, FormField::constant(one)), 8);
  CHECK_FALSE(r4.closed);
  CHECK(r4.max_residual > 1e-3);

  CHECK_THROWS_AS(annihilator_closure_check(FormField::constant(split_rho()), 2), DomainError);
  // pure but degenerate: dx1 ^ ... is isotropic against its conjugate
  CHECK_THROWS_AS(annihilator_closure_check(FormField::constant(Form::basis(6, 0b000111)), 2), DomainError);
}
