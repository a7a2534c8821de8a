#include "gcy/quartic.hpp"

namespace gcy {

SpinBasis::SpinBasis() {
  constexpr int n = kDim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SoElement a(n);
      a.endo(i, j) = 1.0;
      elems_.push_back(a);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      SoElement a(n);
      a.two_form[(Mask{1} << i) | (Mask{1} << j)] = 1.0;
      elems_.push_back(a);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      SoElement a(n);
      a.bivector(i, j) = 1.0;
      a.bivector(j, i) = -1.0;
      elems_.push_back(a);
    }
  for (const SoElement& a : elems_) {
    mats_.push_back(a.matrix());
    spins_.push_back(spin_matrix(a).real());
  }
  gram_.resize(kSize, kSize);
  for (int i = 0; i < kSize; ++i)
    for (int j = 0; j < kSize; ++j) gram_(i, j) = (mats_[i] * mats_[j]).trace().real();
  gram_inv_ = gram_.inverse();
}

const SpinBasis& SpinBasis::get() {
  static const SpinBasis basis;
  return basis;
}

std::string SpinBasis::label(int i) const {
  auto pair_at = [](int k) {
    for (int a = 0; a < kDim; ++a)
      for (int b = a + 1; b < kDim; ++b)
        if (k-- == 0) return std::to_string(a + 1) + std::to_string(b + 1);
    return std::string("?");
  };
  if (i < 36) return "A" + std::to_string(i / 6 + 1) + std::to_string(i % 6 + 1);
  if (i < 51) return "B" + pair_at(i - 36);
  return "beta" + pair_at(i - 51);
}

void require_dim6(const Form& rho, const char* what) {
  if (rho.dim() != 6)
    throw DimensionError(std::string(what) + ": only defined in dimension 6");
}

}  // namespace gcy
