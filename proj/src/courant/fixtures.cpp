#include "gcy/courant.hpp"

namespace gcy {

// Found by exhaustive search over single-term frequency-1 sections on T^3:
//   s1 = d/dx1, s2 = cos(x1) d/dx1, s3 = cos(x2) dx1
//   Jac = -1/4 cos(x1) cos(x2) dx1 + 1/4 sin(x1) sin(x2) dx2 = d(-1/4 sin(x1) cos(x2)).
JacobiatorFixture frozen_jacobiator_fixture() {
  constexpr int n = 3;
  JacobiatorFixture f;
  f.s1 = SectionField(VectorField::coordinate(n, 0), FormField(n), 1);
  VectorField x(n);
  x[0] = TrigPoly::cos_mode(n, 0);
  f.s2 = SectionField(x, FormField(n), 1);
  f.s3 = SectionField(VectorField(n), FormField::basis(0b001, TrigPoly::cos_mode(n, 1)), 1);

  FormField jac(n);
  TrigPoly c1(n), c2(n);
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      c1.add({{a, b, 0}, {0, 0, 0}}, -0.0625);
      c2.add({{a, b, 0}, {0, 0, 0}}, a == b ? -0.0625 : 0.0625);
    }
  jac.add(0b001, c1);
  jac.add(0b010, c2);
  f.expected = SectionField(VectorField(n), jac, 1);
  return f;
}

}  // namespace gcy
