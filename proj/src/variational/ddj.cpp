#include <algorithm>
#include <cmath>

#include "gcy/variational.hpp"

namespace gcy {

namespace {

constexpr double kTol = 1e-8;

// Matrix of k ^ . from parity p to the opposite parity (channel order), real k.
MatC wedge_k_matrix(const std::vector<int>& k, Parity p) {
  const auto in = parity_masks(6, p);
  const auto out = parity_masks(6, opposite(p));
  Form kf(6);
  for (int j = 0; j < 6; ++j) kf[Mask{1} << j] = k[static_cast<std::size_t>(j)];
  MatC m = MatC::Zero(static_cast<Eigen::Index>(out.size()), static_cast<Eigen::Index>(in.size()));
  for (std::size_t c = 0; c < in.size(); ++c) {
    const Form w = wedge(kf, Form::basis(6, in[c]));
    for (std::size_t r = 0; r < out.size(); ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = w[out[r]];
  }
  return m;
}

VecC channel_vector(const Form& f, Parity p) {
  const auto ch = parity_masks(6, p);
  VecC v(static_cast<Eigen::Index>(ch.size()));
  for (std::size_t c = 0; c < ch.size(); ++c) v(static_cast<Eigen::Index>(c)) = f[ch[c]];
  return v;
}

bool is_constant(const GridForm& rho) {
  const int nc = rho.num_channels();
  const double* first = rho.point_data(0);
  const double scale = std::max(1.0, rho.max_abs());
  for (std::size_t p = 1; p < rho.grid().num_points(); ++p) {
    const double* v = rho.point_data(p);
    for (int c = 0; c < nc; ++c)
      if (std::abs(v[c] - first[c]) > 1e-14 * scale) return false;
  }
  return true;
}

bool in_span(const MatC& basis, const MatC& extra) {
  if (extra.cols() == 0) return true;
  MatC both(basis.rows(), basis.cols() + extra.cols());
  both << basis, extra;
  return numeric_rank(both, kTol) == numeric_rank(basis, kTol);
}

std::vector<std::vector<int>> modes_within(int cutoff, const std::vector<bool>& active) {
  std::vector<std::vector<int>> out;
  const int w = 2 * cutoff + 1;
  int total = 1;
  for (int j = 0; j < 6; ++j) total *= w;
  for (int m = 0; m < total; ++m) {
    std::vector<int> k(6);
    int r = m;
    bool ok = true;
    for (int j = 5; j >= 0; --j) {
      k[static_cast<std::size_t>(j)] = r % w - cutoff;
      r /= w;
      if (!active.empty() && !active[static_cast<std::size_t>(j)] && k[static_cast<std::size_t>(j)] != 0) ok = false;
    }
    if (ok) out.push_back(k);
  }
  return out;
}

DdjReport per_mode(const Form& rho, int cutoff, const std::vector<bool>& active) {
  const Parity par = *rho.parity();
  const Parity other = opposite(par);
  const MatC j = j_operator(rho).matrix.cast<cplx>();
  MatC gens(32, 12);
  for (int a = 0; a < 6; ++a) {
    gens.col(a) = channel_vector(contract(Vector::basis(6, a), rho), other);
    gens.col(6 + a) = channel_vector(wedge(Form::basis(6, Mask{1} << a), rho), other);
  }
  DdjReport rep;
  rep.per_mode = true;
  rep.kernel_in_image = true;
  for (const auto& k : modes_within(cutoff, active)) {
    if (std::all_of(k.begin(), k.end(), [](int x) { return x == 0; })) continue;
    ++rep.modes;
    const MatC into = wedge_k_matrix(k, other);  // potentials -> exact forms
    const MatC out = wedge_k_matrix(k, par);     // d on the parity of rho
    const MatC u = column_space(into, kTol);
    const MatC ker = u * null_space(out * j * u, kTol);
    const MatC img = into * gens;
    rep.exact_dim += static_cast<std::size_t>(u.cols());
    rep.kernel_dim += static_cast<std::size_t>(ker.cols());
    rep.image_dim += static_cast<std::size_t>(numeric_rank(img, kTol));
    rep.kernel_in_image = rep.kernel_in_image && in_span(img, ker);
  }
  rep.note = "per-mode blocks for constant rho; a finite-dimensional analog, not a proof";
  return rep;
}

DdjReport dense(const GridForm& rho, int cutoff, const DdjOptions& opt) {
  const TorusGrid& g = rho.grid();
  if (cutoff > g.cutoff()) throw DomainError("ddj_check: cutoff exceeds the grid band");
  const Parity par = rho.parity();
  const Parity other = opposite(par);
  const auto modes = modes_within(cutoff, opt.active_axes);
  const auto nm = static_cast<Eigen::Index>(modes.size());
  const std::size_t exact_cols = 16 * (modes.size() - 1);
  const std::size_t orbit_cols = 12 * modes.size();
  if (exact_cols + orbit_cols > opt.max_dense_dim)
    throw ResourceError("ddj_check: dense system of dimension " + std::to_string(exact_cols + orbit_cols) +
                        " exceeds the bound " + std::to_string(opt.max_dense_dim));

  auto restrict_to_modes = [&](const Spectrum& s) {
    VecC v(nm * 32);
    for (Eigen::Index m = 0; m < nm; ++m) {
      const cplx* d = s.mode_data(g.mode_index(modes[static_cast<std::size_t>(m)]));
      for (int c = 0; c < 32; ++c) v(m * 32 + c) = d[c];
    }
    return v;
  };
  // Real fields u cos(k.x) and u sin(k.x) as spectra.
  auto trig_field = [&](const std::vector<int>& k, const VecC& u, Parity p, bool sine) {
    Spectrum s(g, p);
    const std::size_t m = g.mode_index(k);
    const std::size_t n = g.negated_mode(m);
    for (int c = 0; c < 32; ++c) {
      const cplx a = sine ? u(c) / cplx(0, 2) : u(c) / 2.0;
      s.mode_data(m)[c] += a;
      s.mode_data(n)[c] += std::conj(a);
    }
    return s;
  };

  std::vector<VecC> exact_basis, l_cols, orbit;
  const MatC unit = MatC::Identity(32, 1);  // the constant function 1 in channel 0
  for (std::size_t mi = 0; mi < modes.size(); ++mi) {
    const auto& k = modes[mi];
    const std::size_t m = g.mode_index(k);
    if (g.negated_mode(m) < m) continue;
    const bool zero = g.negated_mode(m) == m;
    for (bool sine : {false, true}) {
      if (zero && sine) continue;
      if (!zero) {
        const MatC u = column_space(wedge_k_matrix(k, other), kTol);
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
          const Spectrum beta = trig_field(k, u.col(c), par, sine);
          const GridForm jb = apply_j(rho, synthesize(beta));
          exact_basis.push_back(restrict_to_modes(beta));
          l_cols.push_back(restrict_to_modes(spectral_d(analyze(jb))));
        }
      }
      // X = f e_a and xi = f dx^a with f = cos or sin of k.x
      const GridForm f = synthesize(trig_field(k, unit.col(0), Parity::Even, sine));
      for (int a = 0; a < 12; ++a) {
        GridForm tau(g, other);
        for (std::size_t p = 0; p < g.num_points(); ++p) {
          const Form r = rho.at(p);
          const Form gen = a < 6 ? contract(Vector::basis(6, a), r) : wedge(Form::basis(6, Mask{1} << (a - 6)), r);
          tau.set(p, gen * f.point_data(p)[0]);
        }
        orbit.push_back(restrict_to_modes(spectral_d(analyze(tau))));
      }
    }
  }
  auto as_matrix = [&](const std::vector<VecC>& cols) {
    MatC mat(nm * 32, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) mat.col(static_cast<Eigen::Index>(c)) = cols[c];
    return mat;
  };
  const MatC basis = as_matrix(exact_basis);
  const MatC ker = basis * null_space(as_matrix(l_cols), kTol);
  const MatC img = as_matrix(orbit);

  DdjReport rep;
  rep.per_mode = false;
  rep.modes = modes.size() - 1;
  rep.exact_dim = static_cast<std::size_t>(basis.cols());
  rep.kernel_dim = static_cast<std::size_t>(ker.cols());
  rep.image_dim = static_cast<std::size_t>(numeric_rank(img, kTol));
  rep.kernel_in_image = in_span(img, ker);
  rep.note = "dense Galerkin truncation; a finite-dimensional analog, not a proof";
  return rep;
}

}  // namespace

DdjReport ddj_check(const GridForm& rho, int cutoff, const DdjOptions& opt) {
  if (rho.grid().dim() != 6) throw DimensionError("ddj_check: needs a 6-dimensional grid");
  if (cutoff < 1) throw DomainError("ddj_check: cutoff must be at least 1");
  if (!opt.active_axes.empty() && opt.active_axes.size() != 6)
    throw DimensionError("ddj_check: active_axes needs one entry per axis");
  const double crit = criticality_residual(rho);
  if (!(crit < opt.crit_tol))
    throw DomainError("ddj_check: rho is not critical (||d rho_hat|| = " + std::to_string(crit) + ")");
  if (is_constant(rho) && !opt.force_dense) return per_mode(rho.at(0), cutoff, opt.active_axes);
  return dense(rho, cutoff, opt);
}

}  // namespace gcy
