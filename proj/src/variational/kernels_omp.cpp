// Threaded kernels on the sparse per-point tables. Each point touches only its own
// 32 channels, so the loops parallelize without synchronization.

#include <omp.h>

#include <array>
#include <cmath>
#include <limits>

#include "pointwise.hpp"

namespace gcy {

namespace detail {

namespace {

constexpr int kN = SpinBasis::kSize;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct PointState {
  std::array<double, kN> m{}, c{};
  std::array<double, 32> s{};  // sigma(mu) rho
  double phi = 0.0, sign = 1.0;
};

// Returns false when rho is not stable at this point.
bool evaluate_point(const PointTables& t, const double* r, PointState& st) {
  const int nc = t.nchan;
  double n2 = 0.0;
  for (int a = 0; a < nc; ++a) n2 += r[a] * r[a];
  for (int i = 0; i < kN; ++i) {
    double acc = 0.0;
    for (const SparseEntry& e : t.quad[static_cast<std::size_t>(i)]) acc += e.val * r[e.row] * r[e.col];
    st.m[static_cast<std::size_t>(i)] = acc;
  }
  double q = 0.0;
  for (int i = 0; i < kN; ++i) {
    double acc = 0.0;
    for (const SparseEntry& e : t.ginv[static_cast<std::size_t>(i)]) acc += e.val * st.m[static_cast<std::size_t>(e.col)];
    st.c[static_cast<std::size_t>(i)] = acc;
    q += acc * st.m[static_cast<std::size_t>(i)];
  }
  q *= 4.0;
  if (!(q < -kStableTol * n2 * n2)) return false;
  st.phi = std::sqrt(-q / 3.0);
  std::fill(st.s.begin(), st.s.begin() + nc, 0.0);
  for (int i = 0; i < kN; ++i) {
    const double ci = st.c[static_cast<std::size_t>(i)];
    if (ci == 0.0) continue;
    for (const SparseEntry& e : t.sigma[static_cast<std::size_t>(i)]) st.s[static_cast<std::size_t>(e.row)] += ci * e.val * r[e.col];
  }
  double orient = 0.0;
  for (int a = 0; a < nc; ++a)
    orient += t.dual_sign[static_cast<std::size_t>(a)] * st.s[static_cast<std::size_t>(t.dual_index[static_cast<std::size_t>(a)])] * r[a];
  st.sign = orient > 0 ? 1.0 : -1.0;
  return true;
}

void require_dim6_grid(const GridForm& rho, const char* what) {
  if (rho.grid().dim() != 6) throw DimensionError(std::string(what) + ": needs a 6-dimensional grid");
}

}  // namespace

HatField hat_field_omp(const GridForm& rho) {
  require_dim6_grid(rho, "hat_field");
  const PointTables& t = point_tables(rho.parity());
  const std::size_t npts = rho.grid().num_points();
  HatField out{std::vector<double>(npts), GridForm(rho.grid(), rho.parity())};
  std::size_t bad = kNone;
  const auto n = static_cast<std::ptrdiff_t>(npts);
#pragma omp parallel for schedule(static) reduction(min : bad)
  for (std::ptrdiff_t ip = 0; ip < n; ++ip) {
    const auto p = static_cast<std::size_t>(ip);
    PointState st;
    if (!evaluate_point(t, rho.point_data(p), st)) {
      bad = std::min(bad, p);
      continue;
    }
    out.phi[p] = st.phi;
    double* h = out.rho_hat.point_data(p);
    const double f = st.sign * 4.0 / (3.0 * st.phi);
    for (int a = 0; a < t.nchan; ++a) h[a] = f * st.s[static_cast<std::size_t>(a)];
  }
  if (bad != kNone)
    throw StabilityError("hat_field: rho is not stable at " + describe_point(rho.grid(), bad), bad);
  return out;
}

GridForm apply_j_omp(const GridForm& rho, const GridForm& w) {
  require_dim6_grid(rho, "apply_j");
  require_same_grid(rho, w, "apply_j");
  if (rho.parity() != w.parity()) throw DomainError("apply_j: direction must have the parity of rho");
  const PointTables& t = point_tables(rho.parity());
  const std::size_t npts = rho.grid().num_points();
  GridForm out(rho.grid(), rho.parity());
  std::size_t bad = kNone;
  const auto n = static_cast<std::ptrdiff_t>(npts);
#pragma omp parallel for schedule(static) reduction(min : bad)
  for (std::ptrdiff_t ip = 0; ip < n; ++ip) {
    const auto p = static_cast<std::size_t>(ip);
    const double* r = rho.point_data(p);
    const double* x = w.point_data(p);
    PointState st;
    if (!evaluate_point(t, r, st)) {
      bad = std::min(bad, p);
      continue;
    }
    std::array<double, kN> mx{}, cx{};
    for (int i = 0; i < kN; ++i) {
      double acc = 0.0;
      for (const SparseEntry& e : t.quad[static_cast<std::size_t>(i)])
        acc += e.val * (r[e.row] * x[e.col] + x[e.row] * r[e.col]);
      mx[static_cast<std::size_t>(i)] = 0.5 * acc;
    }
    double cm = 0.0;
    for (int i = 0; i < kN; ++i) {
      double acc = 0.0;
      for (const SparseEntry& e : t.ginv[static_cast<std::size_t>(i)]) acc += e.val * mx[static_cast<std::size_t>(e.col)];
      cx[static_cast<std::size_t>(i)] = acc;
      cm += st.c[static_cast<std::size_t>(i)] * mx[static_cast<std::size_t>(i)];
    }
    std::array<double, 32> ds{};
    for (int i = 0; i < kN; ++i) {
      const double a = 2.0 * cx[static_cast<std::size_t>(i)];
      const double b = st.c[static_cast<std::size_t>(i)];
      if (a == 0.0 && b == 0.0) continue;
      for (const SparseEntry& e : t.sigma[static_cast<std::size_t>(i)])
        ds[static_cast<std::size_t>(e.row)] += e.val * (a * r[e.col] + b * x[e.col]);
    }
    const double dphi = -(8.0 / 3.0) * cm / st.phi;
    const double f = (4.0 / 3.0) * st.sign;
    double* o = out.point_data(p);
    for (int a = 0; a < t.nchan; ++a)
      o[a] = f * (ds[static_cast<std::size_t>(a)] / st.phi - st.s[static_cast<std::size_t>(a)] * dphi / (st.phi * st.phi));
  }
  if (bad != kNone) throw StabilityError("apply_j: rho is not stable at " + describe_point(rho.grid(), bad), bad);
  return out;
}

}  // namespace detail

HatField hat_field(const GridForm& rho, Kernel k) {
  return k == Kernel::Omp ? detail::hat_field_omp(rho) : detail::hat_field_serial(rho);
}

GridForm apply_j(const GridForm& rho, const GridForm& w, Kernel k) {
  return k == Kernel::Omp ? detail::apply_j_omp(rho, w) : detail::apply_j_serial(rho, w);
}

double volume_functional(const GridForm& rho, Kernel k) {
  const HatField h = hat_field(rho, k);
  double acc = 0.0;
  for (double v : h.phi) acc += v;
  return acc * rho.grid().cell_volume();
}

std::vector<TypeTag> classify_points(const GridForm& rho) {
  const HatField h = hat_field(rho);
  const std::size_t npts = rho.grid().num_points();
  std::vector<TypeTag> tags(npts, TypeTag::Unstable);
  const auto n = static_cast<std::ptrdiff_t>(npts);
  const auto& ch = rho.channels();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ip = 0; ip < n; ++ip) {
    const auto p = static_cast<std::size_t>(ip);
    // alpha = (rho + i rho_hat) / 2 is pure whenever rho is stable
    const double* r = rho.point_data(p);
    const double* s = h.rho_hat.point_data(p);
    Form alpha(6);
    for (std::size_t c = 0; c < ch.size(); ++c) alpha[ch[c]] = 0.5 * cplx(r[c], s[c]);
    const double nrm = alpha.norm();
    if (rho.parity() == Parity::Even) {
      tags[p] = std::abs(alpha[0]) > 1e-9 * nrm ? TypeTag::SymplecticBTransform : TypeTag::FoliatedType;
      continue;
    }
    MatC sys(64, 6);
    for (int j = 0; j < 6; ++j) {
      const Form wj = wedge(Form::basis(6, Mask{1} << j), alpha);
      for (Mask m = 0; m < 64; ++m) sys(m, j) = wj[m];
    }
    const int k = 6 - numeric_rank(sys);
    tags[p] = k == 3 ? TypeTag::OddComplexType : (k == 1 ? TypeTag::OddFibrationType : TypeTag::Unstable);
  }
  return tags;
}

}  // namespace gcy
