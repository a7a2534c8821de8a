#include <cmath>
#include <numbers>
#include <string>

#include "gcy/variational.hpp"

namespace gcy {

namespace {

const std::vector<Mask>& cached_channels(int dim, Parity p) {
  static const auto table = [] {
    std::vector<std::vector<Mask>> t;
    for (int d = 0; d <= kMaxDim; ++d)
      for (Parity q : {Parity::Even, Parity::Odd})
        t.push_back(d >= kMinDim ? parity_masks(d, q) : std::vector<Mask>{});
    return t;
  }();
  return table[static_cast<std::size_t>(2 * dim + (p == Parity::Odd ? 1 : 0))];
}

}  // namespace

TorusGrid::TorusGrid(int dim, int points_per_axis, int cutoff) : dim_(dim), n_(points_per_axis), k_(cutoff) {
  if (dim != 2 && dim != 4 && dim != 6)
    throw DimensionError("torus grid dimension must be 2, 4 or 6, got " + std::to_string(dim));
  if (n_ < 4 || n_ % 2 != 0)
    throw DomainError("points per axis must be even and >= 4, got " + std::to_string(n_));
  if (k_ < 0 || 2 * k_ >= n_)
    throw DomainError("cutoff must satisfy 0 <= K < N/2, got K=" + std::to_string(k_) +
                      " N=" + std::to_string(n_));
  npts_ = 1;
  nmodes_ = 1;
  for (int i = 0; i < dim_; ++i) {
    npts_ *= static_cast<std::size_t>(n_);
    nmodes_ *= static_cast<std::size_t>(2 * k_ + 1);
  }
}

double TorusGrid::cell_volume() const { return std::pow(2.0 * std::numbers::pi / n_, dim_); }
double TorusGrid::total_volume() const { return std::pow(2.0 * std::numbers::pi, dim_); }

std::vector<double> TorusGrid::point(std::size_t p) const {
  std::vector<double> x(static_cast<std::size_t>(dim_));
  const double h = 2.0 * std::numbers::pi / n_;
  for (int i = dim_ - 1; i >= 0; --i) {
    x[static_cast<std::size_t>(i)] = h * static_cast<double>(p % static_cast<std::size_t>(n_));
    p /= static_cast<std::size_t>(n_);
  }
  return x;
}

std::vector<int> TorusGrid::mode(std::size_t m) const {
  std::vector<int> k(static_cast<std::size_t>(dim_));
  const auto w = static_cast<std::size_t>(2 * k_ + 1);
  for (int i = dim_ - 1; i >= 0; --i) {
    k[static_cast<std::size_t>(i)] = static_cast<int>(m % w) - k_;
    m /= w;
  }
  return k;
}

std::size_t TorusGrid::mode_index(const std::vector<int>& k) const {
  if (static_cast<int>(k.size()) != dim_) throw DimensionError("mode_index: wrong length");
  std::size_t m = 0;
  for (int ki : k) {
    if (std::abs(ki) > k_) throw DomainError("mode_index: mode outside the band");
    m = m * static_cast<std::size_t>(2 * k_ + 1) + static_cast<std::size_t>(ki + k_);
  }
  return m;
}

GridForm::GridForm(const TorusGrid& g, Parity p)
    : grid_(g), parity_(p), chan_(&cached_channels(g.dim(), p)),
      v_(g.num_points() * static_cast<std::size_t>(g.num_channels()), 0.0) {}

GridForm GridForm::constant(const TorusGrid& g, const Form& f) {
  require_same_dim(g.dim(), f.dim(), "GridForm::constant");
  if (!f.is_real(1e-14 * std::max(1.0, f.max_abs()))) throw DomainError("GridForm::constant: form must be real");
  const auto par = f.parity();
  if (!par && !f.is_zero()) throw DomainError("GridForm::constant: form must have homogeneous parity");
  GridForm out(g, par.value_or(Parity::Even));
  const auto& ch = out.channels();
  const auto nc = ch.size();
  for (std::size_t p = 0; p < g.num_points(); ++p)
    for (std::size_t c = 0; c < nc; ++c) out.v_[p * nc + c] = f[ch[c]].real();
  return out;
}

GridForm GridForm::sample(const TorusGrid& g, Parity p, const std::function<Form(std::span<const double>)>& fn) {
  GridForm out(g, p);
  for (std::size_t i = 0; i < g.num_points(); ++i) out.set(i, fn(g.point(i)));
  return out;
}

GridForm GridForm::from_field(const TorusGrid& g, const FormField& f) {
  require_same_dim(g.dim(), f.dim(), "GridForm::from_field");
  const auto deg = f.degree();
  const Parity p = (deg && (*deg % 2)) ? Parity::Odd : Parity::Even;
  return sample(g, p, [&](std::span<const double> x) { return f(x); });
}

Form GridForm::at(std::size_t p) const {
  Form f(grid_.dim());
  const auto& ch = channels();
  const double* d = point_data(p);
  for (std::size_t c = 0; c < ch.size(); ++c) f[ch[c]] = d[c];
  return f;
}

void GridForm::set(std::size_t p, const Form& f) {
  require_same_dim(grid_.dim(), f.dim(), "GridForm::set");
  const auto& ch = channels();
  double* d = point_data(p);
  const double scale = std::max(1.0, f.max_abs());
  for (Mask s = 0; s < f.size(); ++s) {
    if (mask_parity(s) != parity_ && std::abs(f[s]) > 1e-14 * scale)
      throw DomainError("GridForm::set: form has components of the wrong parity");
    if (std::abs(f[s].imag()) > 1e-14 * scale) throw DomainError("GridForm::set: form must be real");
  }
  for (std::size_t c = 0; c < ch.size(); ++c) d[c] = f[ch[c]].real();
}

double GridForm::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

void require_same_grid(const GridForm& a, const GridForm& b, const char* what) {
  if (!(a.grid() == b.grid())) throw DimensionError(std::string(what) + ": fields live on different grids");
}

namespace {
void require_compatible(const GridForm& a, const GridForm& b, const char* what) {
  require_same_grid(a, b, what);
  if (a.parity() != b.parity()) throw DomainError(std::string(what) + ": parity mismatch");
}
}  // namespace

GridForm& GridForm::operator+=(const GridForm& o) {
  require_compatible(*this, o, "GridForm +");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  aliasing_energy += o.aliasing_energy;
  return *this;
}

GridForm& GridForm::operator-=(const GridForm& o) {
  require_compatible(*this, o, "GridForm -");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  aliasing_energy += o.aliasing_energy;
  return *this;
}

GridForm& GridForm::operator*=(double s) {
  for (double& x : v_) x *= s;
  aliasing_energy *= s * s;
  return *this;
}

double l2_inner(const GridForm& a, const GridForm& b) {
  require_compatible(a, b, "l2_inner");
  double acc = 0.0;
  const auto& va = a.values();
  const auto& vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) acc += va[i] * vb[i];
  return acc * a.grid().cell_volume();
}

double l2_norm(const GridForm& a) { return std::sqrt(l2_inner(a, a)); }

namespace {

struct DualTable {
  std::vector<std::size_t> index;
  std::vector<double> sign;
};

// (D a)_T = sign(T) a_{T^c}
const DualTable& dual_table(int dim, Parity p) {
  static std::vector<DualTable> cache = [] {
    std::vector<DualTable> t(2 * (kMaxDim + 1));
    for (int d : {2, 4, 6})
      for (Parity q : {Parity::Even, Parity::Odd}) {
        const auto& ch = cached_channels(d, q);
        const Mask top = (Mask{1} << d) - 1;
        std::vector<int> pos(std::size_t{1} << d, -1);
        for (std::size_t c = 0; c < ch.size(); ++c) pos[ch[c]] = static_cast<int>(c);
        DualTable& dt = t[static_cast<std::size_t>(2 * d + (q == Parity::Odd ? 1 : 0))];
        for (Mask s : ch) {
          const Mask sc = top & ~s;
          dt.index.push_back(static_cast<std::size_t>(pos[sc]));
          dt.sign.push_back(sigma_sign(popcount(sc)) * wedge_sign(sc, s));
        }
      }
    return t;
  }();
  return cache[static_cast<std::size_t>(2 * dim + (p == Parity::Odd ? 1 : 0))];
}

}  // namespace

GridForm mukai_dual(const GridForm& a) {
  const DualTable& dt = dual_table(a.grid().dim(), a.parity());
  GridForm out(a.grid(), a.parity());
  const std::size_t nc = dt.index.size();
  const auto& v = a.values();
  auto& o = out.values();
  for (std::size_t p = 0; p < a.grid().num_points(); ++p)
    for (std::size_t c = 0; c < nc; ++c) o[p * nc + c] = dt.sign[c] * v[p * nc + dt.index[c]];
  return out;
}

double integrate_mukai(const GridForm& a, const GridForm& b) {
  require_same_grid(a, b, "integrate_mukai");
  if (a.parity() != b.parity()) return 0.0;
  return l2_inner(mukai_dual(a), b);
}

GridForm wedge(const GridForm& a, const GridForm& b) {
  require_same_grid(a, b, "wedge");
  const Parity p = a.parity() == b.parity() ? Parity::Even : Parity::Odd;
  GridForm out(a.grid(), p);
  const auto& ca = a.channels();
  const auto& cb = b.channels();
  const auto& co = out.channels();
  std::vector<int> pos(std::size_t{1} << a.grid().dim(), -1);
  for (std::size_t c = 0; c < co.size(); ++c) pos[co[c]] = static_cast<int>(c);
  struct Entry {
    std::size_t i, j, o;
    double s;
  };
  std::vector<Entry> table;
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = 0; j < cb.size(); ++j) {
      const int s = wedge_sign(ca[i], cb[j]);
      if (s != 0) table.push_back({i, j, static_cast<std::size_t>(pos[ca[i] | cb[j]]), static_cast<double>(s)});
    }
  for (std::size_t p = 0; p < a.grid().num_points(); ++p) {
    const double* x = a.point_data(p);
    const double* y = b.point_data(p);
    double* z = out.point_data(p);
    for (const Entry& e : table) z[e.o] += e.s * x[e.i] * y[e.j];
  }
  return out;
}

}  // namespace gcy

namespace gcy {

Spectrum mukai_dual(const Spectrum& a) {
  const DualTable& dt = dual_table(a.grid.dim(), a.parity);
  Spectrum out(a.grid, a.parity);
  const std::size_t nc = dt.index.size();
  for (std::size_t m = 0; m < a.grid.num_modes(); ++m) {
    const cplx* x = a.mode_data(m);
    cplx* y = out.mode_data(m);
    for (std::size_t c = 0; c < nc; ++c) y[c] = dt.sign[c] * x[dt.index[c]];
  }
  return out;
}

}  // namespace gcy
