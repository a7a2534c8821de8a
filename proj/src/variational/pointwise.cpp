#include "pointwise.hpp"

#include <cmath>
#include <sstream>

namespace gcy::detail {

namespace {

PointTables build(Parity par) {
  const SpinBasis& sb = SpinBasis::get();
  const auto ch = parity_masks(6, par);
  std::vector<int> pos(64, -1);
  for (std::size_t c = 0; c < ch.size(); ++c) pos[ch[c]] = static_cast<int>(c);

  PointTables t;
  t.nchan = static_cast<int>(ch.size());
  for (Mask s : ch) {
    const Mask sc = 63u & ~s;
    t.dual_index.push_back(pos[sc]);
    t.dual_sign.push_back(sigma_sign(popcount(sc)) * wedge_sign(sc, s));
  }
  for (int i = 0; i < SpinBasis::kSize; ++i) {
    const MatR& m = sb.spin(i);
    std::vector<SparseEntry> sig, quad;
    for (std::size_t r = 0; r < ch.size(); ++r)
      for (std::size_t c = 0; c < ch.size(); ++c) {
        const double v = m(ch[r], ch[c]);
        if (v == 0.0) continue;
        sig.push_back({static_cast<int>(r), static_cast<int>(c), v});
        // 1/2 <x, sigma_i x> = 1/2 sum_r (D x)_r (sigma_i x)_r
        quad.push_back({t.dual_index[r], static_cast<int>(c), 0.5 * t.dual_sign[r] * v});
      }
    t.sigma.push_back(std::move(sig));
    t.quad.push_back(std::move(quad));
  }
  const MatR& gi = sb.gram_inverse();
  for (int i = 0; i < SpinBasis::kSize; ++i) {
    std::vector<SparseEntry> row;
    for (int j = 0; j < SpinBasis::kSize; ++j)
      if (std::abs(gi(i, j)) > 1e-13) row.push_back({i, j, gi(i, j)});
    t.ginv.push_back(std::move(row));
  }
  return t;
}

}  // namespace

const PointTables& point_tables(Parity p) {
  static const PointTables even = build(Parity::Even);
  static const PointTables odd = build(Parity::Odd);
  return p == Parity::Even ? even : odd;
}

std::string describe_point(const TorusGrid& g, std::size_t p) {
  std::ostringstream os;
  os << "point " << p << " (x = ";
  const auto x = g.point(p);
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace gcy::detail
